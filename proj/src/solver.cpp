#include "bitblast/solver.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bitblast {

namespace {

// Literal -> watch index: v -> 2v, -v -> 2v+1.
inline size_t widx(int lit) {
    return static_cast<size_t>(std::abs(lit)) * 2 + (lit < 0 ? 1 : 0);
}

struct Search {
    std::vector<std::vector<int>>& clauses; // literal order mutates as watches move
    int num_vars;

    std::vector<int8_t> value;               // 1-based: -1 unassigned, 0/1
    std::vector<std::vector<size_t>> watches; // widx(lit) -> clause indices watching lit
    std::vector<int> trail;
    std::vector<size_t> trail_lim;           // decision level -> trail start
    std::vector<int8_t> flipped;             // per level: already tried both phases
    size_t qhead = 0;
    uint64_t decisions = 0, propagations = 0;

    Search(std::vector<std::vector<int>>& cls, int nv) : clauses(cls), num_vars(nv) {
        value.assign(static_cast<size_t>(num_vars) + 1, -1);
        watches.assign(2 * static_cast<size_t>(num_vars) + 2, {});
        for (size_t ci = 0; ci < clauses.size(); ++ci) {
            const auto& c = clauses[ci];
            if (c.size() >= 2) {
                watches[widx(c[0])].push_back(ci);
                watches[widx(c[1])].push_back(ci);
            }
        }
    }

    int lit_value(int lit) const {
        int8_t v = value[static_cast<size_t>(std::abs(lit))];
        if (v < 0) return -1;
        return (lit > 0) == (v == 1) ? 1 : 0;
    }

    bool enqueue(int lit) {
        int lv = lit_value(lit);
        if (lv == 0) return false;
        if (lv == 1) return true;
        value[static_cast<size_t>(std::abs(lit))] = lit > 0 ? 1 : 0;
        trail.push_back(lit);
        return true;
    }

    // Standard two-watched-literal scheme; returns false on conflict.
    bool propagate() {
        while (qhead < trail.size()) {
            int lit = trail[qhead++];
            ++propagations;
            std::vector<size_t>& wl = watches[widx(-lit)]; // clauses watching the falsified literal
            size_t keep = 0;
            for (size_t i = 0; i < wl.size(); ++i) {
                size_t ci = wl[i];
                std::vector<int>& c = clauses[ci];
                // Make c[0] the other watch.
                if (c[0] == -lit) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    wl[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.size(); ++k) {
                    if (lit_value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches[widx(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                wl[keep++] = ci; // stays watched
                if (!enqueue(c[0])) {
                    // Conflict: keep the remaining watchers before bailing.
                    for (size_t k = i + 1; k < wl.size(); ++k) wl[keep++] = wl[k];
                    wl.resize(keep);
                    return false;
                }
            }
            wl.resize(keep);
        }
        return true;
    }

    size_t level() const { return trail_lim.size(); }

    void push_level(int lit) {
        trail_lim.push_back(trail.size());
        flipped.push_back(0);
        enqueue(lit);
    }

    // Undoes assignments above `lvl`.
    void backtrack_to(size_t lvl) {
        size_t start = trail_lim[lvl];
        for (size_t i = trail.size(); i > start; --i)
            value[static_cast<size_t>(std::abs(trail[i - 1]))] = -1;
        trail.resize(start);
        trail_lim.resize(lvl);
        flipped.resize(lvl);
        qhead = start;
    }

    int pick_branch_var() const {
        for (int v = 1; v <= num_vars; ++v)
            if (value[static_cast<size_t>(v)] < 0) return v;
        return 0;
    }
};

} // namespace

Solver::Solver(const ClauseSet& cs) : num_vars_(cs.num_vars) {
    clauses_.reserve(cs.clauses.size());
    for (const auto& c : cs.clauses) {
        if (c.empty()) {
            trivially_unsat_ = true;
            continue;
        }
        if (c.size() == 1) {
            units_.push_back(c[0]);
            continue;
        }
        clauses_.push_back(c);
    }
}

SolverResult Solver::solve(std::span<const int> assumptions, uint64_t max_decisions) {
    SolverResult result;
    if (trivially_unsat_) {
        result.status = SolveStatus::Unsat;
        return result;
    }
    for (int lit : assumptions)
        if (lit == 0 || std::abs(lit) > num_vars_)
            throw std::invalid_argument("assumption literal out of range");

    Search search(clauses_, num_vars_);

    for (int lit : units_) {
        if (!search.enqueue(lit)) {
            result.status = SolveStatus::Unsat;
            return result;
        }
    }
    if (!search.propagate()) {
        result.status = SolveStatus::Unsat;
        return result;
    }

    // Assumptions become the bottom decision levels; they are never flipped,
    // so any conflict that reaches them proves Unsat under the assumptions.
    size_t num_assumption_levels = 0;
    for (int lit : assumptions) {
        int lv = search.lit_value(lit);
        if (lv == 0) {
            result.status = SolveStatus::Unsat;
            return result;
        }
        if (lv == 1) continue;
        search.push_level(lit);
        num_assumption_levels = search.level();
        if (!search.propagate()) {
            result.status = SolveStatus::Unsat;
            return result;
        }
    }

    while (true) {
        int v = search.pick_branch_var();
        if (v == 0) break; // all assigned, no conflict: model found
        if (search.decisions >= max_decisions) {
            result.status = SolveStatus::Unknown;
            result.decisions = search.decisions;
            result.propagations = search.propagations;
            return result;
        }
        ++search.decisions;
        search.push_level(v);
        while (!search.propagate()) {
            // Chronological backtracking: flip the deepest unflipped decision
            // above the assumption levels.
            size_t lvl = search.level();
            while (lvl > num_assumption_levels && search.flipped[lvl - 1]) --lvl;
            if (lvl <= num_assumption_levels) {
                result.status = SolveStatus::Unsat;
                result.decisions = search.decisions;
                result.propagations = search.propagations;
                return result;
            }
            int decision = search.trail[search.trail_lim[lvl - 1]];
            search.backtrack_to(lvl - 1);
            search.trail_lim.push_back(search.trail.size());
            search.flipped.push_back(1);
            search.enqueue(-decision);
        }
    }

    result.status = SolveStatus::Sat;
    result.model.assign(static_cast<size_t>(num_vars_) + 1, 0);
    for (int v = 1; v <= num_vars_; ++v)
        result.model[static_cast<size_t>(v)] = search.value[static_cast<size_t>(v)];
    result.decisions = search.decisions;
    result.propagations = search.propagations;

    // Internal sanity: a Sat answer must satisfy every clause.
    for (const auto& c : clauses_) {
        bool ok = false;
        for (int lit : c)
            if ((lit > 0) == (result.model[static_cast<size_t>(std::abs(lit))] == 1)) {
                ok = true;
                break;
            }
        if (!ok) throw std::logic_error("solver produced a non-model");
    }
    for (int lit : units_)
        if ((lit > 0) != (result.model[static_cast<size_t>(std::abs(lit))] == 1))
            throw std::logic_error("solver produced a non-model");
    return result;
}

bool check_model(const ClauseSet& cs, std::span<const int8_t> model) {
    if (cs.num_vars > 0 && model.size() < static_cast<size_t>(cs.num_vars) + 1)
        throw std::invalid_argument("check_model: partial model");
    for (int v = 1; v <= cs.num_vars; ++v)
        if (model[static_cast<size_t>(v)] != 0 && model[static_cast<size_t>(v)] != 1)
            throw std::invalid_argument("check_model: partial model");
    for (const auto& c : cs.clauses) {
        bool ok = false;
        for (int lit : c)
            if ((lit > 0) == (model[static_cast<size_t>(std::abs(lit))] == 1)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

SolverResult parse_solver_output(const std::string& text, int num_vars) {
    SolverResult result;
    std::istringstream is(text);
    std::string line;
    bool have_verdict = false;
    std::vector<int8_t> model(static_cast<size_t>(num_vars) + 1, 0);
    while (std::getline(is, line)) {
        if (line.rfind("s ", 0) == 0) {
            std::string verdict = line.substr(2);
            while (!verdict.empty() && (verdict.back() == '\r' || verdict.back() == ' '))
                verdict.pop_back();
            if (verdict == "SATISFIABLE") {
                result.status = SolveStatus::Sat;
                have_verdict = true;
            } else if (verdict == "UNSATISFIABLE") {
                result.status = SolveStatus::Unsat;
                have_verdict = true;
            } else {
                result.status = SolveStatus::Unknown;
                have_verdict = true;
            }
        } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
            std::istringstream ls(line.substr(1));
            int lit;
            while (ls >> lit) {
                if (lit == 0) continue;
                if (std::abs(lit) > num_vars)
                    throw std::runtime_error("solver output literal out of range: " +
                                             std::to_string(lit));
                model[static_cast<size_t>(std::abs(lit))] = lit > 0 ? 1 : 0;
            }
        }
    }
    if (!have_verdict) throw std::runtime_error("no 's' verdict line in solver output");
    if (result.status == SolveStatus::Sat) result.model = std::move(model);
    return result;
}

} // namespace bitblast
