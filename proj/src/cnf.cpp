#include "bitblast/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bitblast {

bool ClauseSet::add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end(),
              [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 1; i < lits.size(); ++i)
        if (lits[i] == -lits[i - 1]) return false; // tautology
    if (!seen_.insert(lits).second) return false;  // duplicate
    clauses.push_back(std::move(lits));
    return true;
}

namespace {

void write_io_comments(const ClauseSet& cs, std::ostream& os) {
    for (const auto& io : cs.inputs) {
        os << "c in " << io.name;
        if (io.index >= 0) os << "[" << io.index << "]";
        os << " = " << io.dimacs << "\n";
    }
    for (const auto& io : cs.outputs) {
        os << "c out " << io.name;
        if (io.index >= 0) os << "[" << io.index << "]";
        os << " = " << io.dimacs << "\n";
    }
}

} // namespace

void write_dimacs(const ClauseSet& cs, std::ostream& os) {
    os << "p cnf " << cs.num_vars << " " << cs.clauses.size() << "\n";
    write_io_comments(cs, os);
    for (const auto& clause : cs.clauses) {
        for (int lit : clause) os << lit << " ";
        os << "0\n";
    }
}

std::string write_dimacs(const ClauseSet& cs) {
    std::ostringstream os;
    write_dimacs(cs, os);
    return os.str();
}

std::string write_map(const ClauseSet& cs) {
    std::ostringstream os;
    write_io_comments(cs, os);
    return os.str();
}

namespace {

// Parses "name[idx] = var" or "name = var" from an in/out comment.
bool parse_io_comment(const std::string& rest, IoVar* out) {
    std::istringstream is(rest);
    std::string token, eq;
    int dimacs = 0;
    if (!(is >> token >> eq >> dimacs) || eq != "=") return false;
    out->index = -1;
    size_t bracket = token.find('[');
    if (bracket != std::string::npos) {
        if (token.back() != ']') return false;
        out->name = token.substr(0, bracket);
        out->index = std::stoll(token.substr(bracket + 1, token.size() - bracket - 2));
    } else {
        out->name = token;
    }
    out->dimacs = dimacs;
    return true;
}

} // namespace

ClauseSet read_dimacs(std::istream& is) {
    ClauseSet cs;
    bool have_header = false;
    size_t declared_clauses = 0;
    size_t parsed_clauses = 0;
    std::vector<int> current;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == 'c') {
            IoVar io;
            if (line.rfind("c in ", 0) == 0 && parse_io_comment(line.substr(5), &io))
                cs.inputs.push_back(io);
            else if (line.rfind("c out ", 0) == 0 && parse_io_comment(line.substr(6), &io))
                cs.outputs.push_back(io);
            continue;
        }
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, cnf;
            long long vars = -1, clauses = -1;
            if (!(hs >> p >> cnf >> vars >> clauses) || cnf != "cnf" || vars < 0 || clauses < 0)
                throw std::runtime_error("malformed DIMACS header: " + line);
            cs.num_vars = static_cast<int>(vars);
            declared_clauses = static_cast<size_t>(clauses);
            have_header = true;
            continue;
        }
        if (!have_header) throw std::runtime_error("DIMACS clause before header");
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                cs.add_clause(std::move(current));
                current.clear();
                ++parsed_clauses;
            } else {
                if (std::abs(lit) > cs.num_vars)
                    throw std::runtime_error("literal " + std::to_string(lit) +
                                             " out of range (num_vars=" +
                                             std::to_string(cs.num_vars) + ")");
                current.push_back(lit);
            }
        }
        if (ls.fail() && !ls.eof()) throw std::runtime_error("malformed DIMACS clause line: " + line);
    }
    if (!have_header) throw std::runtime_error("missing DIMACS header");
    if (!current.empty()) throw std::runtime_error("unterminated final clause");
    if (parsed_clauses != declared_clauses)
        throw std::runtime_error("clause count mismatch: header says " +
                                 std::to_string(declared_clauses) + ", found " +
                                 std::to_string(parsed_clauses));
    cs.var_map.assign(static_cast<size_t>(cs.num_vars) + 1, 0);
    for (int v = 1; v <= cs.num_vars; ++v) cs.var_map[static_cast<size_t>(v)] = v;
    return cs;
}

ClauseSet read_dimacs_text(const std::string& text) {
    std::istringstream is(text);
    return read_dimacs(is);
}

} // namespace bitblast
