#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bitblast/cnf.hpp"

namespace bitblast {

enum class SolveStatus : uint8_t { Sat, Unsat, Unknown };

struct SolverResult {
    SolveStatus status = SolveStatus::Unknown;
    std::vector<int8_t> model; // 1-based by DIMACS var; only meaningful for Sat
    uint64_t decisions = 0;
    uint64_t propagations = 0;
};

// Complete DPLL search with two-watched-literal unit propagation and
// chronological backtracking. Branching is fixed (lowest-index unassigned
// variable, positive phase first) so runs are reproducible. Assumptions are
// forced as the first decisions; a conflict at or below the assumption levels
// yields Unsat. Exceeding `max_decisions` yields Unknown, never a wrong
// verdict. Returned Sat models are checked internally before being handed out.
class Solver {
public:
    static constexpr uint64_t kDefaultDecisionCap = uint64_t(1) << 26;

    explicit Solver(const ClauseSet& cs);

    SolverResult solve(std::span<const int> assumptions = {},
                       uint64_t max_decisions = kDefaultDecisionCap);

private:
    int num_vars_;
    std::vector<std::vector<int>> clauses_;
    std::vector<int> units_;
    bool trivially_unsat_ = false;
};

// True iff every clause has a satisfied literal. The model must be total
// (every variable 0/1); a partial model is reported via std::invalid_argument.
bool check_model(const ClauseSet& cs, std::span<const int8_t> model);

// Parses SAT-competition style output (`s SATISFIABLE` / `s UNSATISFIABLE`
// verdict lines, `v ` literal lines). Variables not mentioned default to
// false.
SolverResult parse_solver_output(const std::string& text, int num_vars);

} // namespace bitblast
