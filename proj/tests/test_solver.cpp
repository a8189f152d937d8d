#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "bitblast/rng.hpp"
#include "bitblast/solver.hpp"

using namespace bitblast;

namespace {

ClauseSet make_cs(int num_vars, std::vector<std::vector<int>> clauses) {
    ClauseSet cs;
    cs.num_vars = num_vars;
    for (auto& c : clauses) cs.add_clause(std::move(c));
    return cs;
}

// Exhaustive SAT check, 64 assignments per word: bit b of word w represents
// assignment number w*64+b, and variable v's truth column over assignments is
// a fixed periodic pattern, so each clause is evaluated word-parallel.
bool brute_force_sat(const ClauseSet& cs) {
    int n = cs.num_vars;
    static const uint64_t kPattern[6] = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    auto column = [&](int v /*1-based*/, size_t w) -> uint64_t {
        int b = v - 1;
        if (b < 6) return kPattern[b];
        return (w >> (b - 6)) & 1 ? ~uint64_t(0) : uint64_t(0);
    };
    size_t words = n >= 6 ? (size_t(1) << (n - 6)) : 1;
    uint64_t tail_mask = n >= 6 ? ~uint64_t(0) : (uint64_t(1) << (uint64_t(1) << n)) - 1;
    for (size_t w = 0; w < words; ++w) {
        uint64_t acc = tail_mask;
        for (const auto& clause : cs.clauses) {
            uint64_t cl = 0;
            for (int lit : clause) {
                uint64_t col = column(std::abs(lit), w);
                cl |= lit > 0 ? col : ~col;
            }
            acc &= cl;
            if (!acc) break;
        }
        if (acc) return true;
    }
    return false;
}

} // namespace

TEST_CASE("solver: trivial verdicts") {
    CHECK(Solver(make_cs(1, {{1}, {-1}})).solve().status == SolveStatus::Unsat);
    CHECK(Solver(make_cs(0, {})).solve().status == SolveStatus::Sat);
    CHECK(Solver(make_cs(1, {{}})).solve().status == SolveStatus::Unsat);

    SolverResult r = Solver(make_cs(2, {{1, 2}})).solve(std::vector<int>{-1});
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(r.model[1] == 0);
    CHECK(r.model[2] == 1); // unit propagation under the assumption
}

TEST_CASE("solver: deterministic branching prefers low index, positive phase") {
    SolverResult r = Solver(make_cs(3, {{1, 2, 3}})).solve();
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(r.model[1] == 1);
    CHECK(r.model[2] == 1);
    CHECK(r.model[3] == 1);
}

TEST_CASE("solver: decision cap yields Unknown, never a wrong verdict") {
    // Pigeonhole-ish hard-ish instance under a tiny budget.
    ClauseSet cs;
    cs.num_vars = 12;
    for (int p = 0; p < 4; ++p)
        cs.add_clause({p * 3 + 1, p * 3 + 2, p * 3 + 3});
    for (int h = 1; h <= 3; ++h)
        for (int p1 = 0; p1 < 4; ++p1)
            for (int p2 = p1 + 1; p2 < 4; ++p2)
                cs.add_clause({-(p1 * 3 + h), -(p2 * 3 + h)});
    Solver solver(cs);
    CHECK(solver.solve({}, 2).status == SolveStatus::Unknown);
    CHECK(solver.solve({}, uint64_t(1) << 20).status == SolveStatus::Unsat);
}

TEST_CASE("solver: agreement with exhaustive enumeration on random 3-CNFs") {
    Rng rng(1234);
    int sat_seen = 0, unsat_seen = 0;
    for (int i = 0; i < 1000; ++i) {
        int n = 3 + static_cast<int>(rng.below(18));   // up to 20 variables
        int m = 1 + static_cast<int>(rng.below(85));   // up to 85 clauses
        ClauseSet cs;
        cs.num_vars = n;
        for (int c = 0; c < m; ++c) {
            std::vector<int> clause;
            for (int k = 0; k < 3; ++k) {
                int v = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
                clause.push_back(rng.bit() ? v : -v);
            }
            cs.add_clause(std::move(clause));
        }
        Solver solver(cs);
        SolverResult res = solver.solve();
        bool expected = brute_force_sat(cs);
        REQUIRE(res.status == (expected ? SolveStatus::Sat : SolveStatus::Unsat));
        if (expected) {
            ++sat_seen;
            CHECK(check_model(cs, res.model));
        } else {
            ++unsat_seen;
        }
    }
    CHECK(sat_seen > 0);
    CHECK(unsat_seen > 0);
}

TEST_CASE("solver: assumptions equal added unit clauses") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        int n = 3 + static_cast<int>(rng.below(10));
        int m = 1 + static_cast<int>(rng.below(40));
        ClauseSet cs;
        cs.num_vars = n;
        for (int c = 0; c < m; ++c) {
            std::vector<int> clause;
            for (int k = 0; k < 3; ++k) {
                int v = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
                clause.push_back(rng.bit() ? v : -v);
            }
            cs.add_clause(std::move(clause));
        }
        std::vector<int> assumptions;
        for (int v = 1; v <= n; ++v)
            if (rng.below(3) == 0) assumptions.push_back(rng.bit() ? v : -v);

        Solver s1(cs);
        SolveStatus with_assumptions = s1.solve(assumptions).status;

        ClauseSet extended = cs;
        for (int lit : assumptions) extended.add_clause({lit});
        Solver s2(extended);
        CHECK(with_assumptions == s2.solve().status);
    }
}

TEST_CASE("check_model") {
    ClauseSet cs = make_cs(2, {{1, -2}});
    std::vector<int8_t> good = {0, 1, 0};
    std::vector<int8_t> bad = {0, 0, 1};
    CHECK(check_model(cs, good));
    CHECK(!check_model(cs, bad));
    std::vector<int8_t> partial = {0, 1};
    CHECK_THROWS_AS(check_model(cs, partial), std::invalid_argument);
    ClauseSet empty;
    CHECK(check_model(empty, std::vector<int8_t>{}));
}

TEST_CASE("solver output parsing (SAT-competition format)") {
    SolverResult sat = parse_solver_output("c comment\ns SATISFIABLE\nv 1 -2 3 0\n", 3);
    REQUIRE(sat.status == SolveStatus::Sat);
    CHECK(sat.model[1] == 1);
    CHECK(sat.model[2] == 0);
    CHECK(sat.model[3] == 1);

    SolverResult unsat = parse_solver_output("s UNSATISFIABLE\n", 3);
    CHECK(unsat.status == SolveStatus::Unsat);

    SolverResult multi = parse_solver_output("s SATISFIABLE\nv -1 -2\nv 3 0\n", 3);
    REQUIRE(multi.status == SolveStatus::Sat);
    CHECK(multi.model[3] == 1);

    CHECK_THROWS_AS(parse_solver_output("no verdict here\n", 2), std::runtime_error);
    CHECK_THROWS_AS(parse_solver_output("s SATISFIABLE\nv 9 0\n", 2), std::runtime_error);
    CHECK(parse_solver_output("s UNKNOWN\n", 1).status == SolveStatus::Unknown);
}
