#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bitblast/cnf.hpp"
#include "bitblast/interp.hpp"
#include "bitblast/rng.hpp"
#include "bitblast/solver.hpp"
#include "bitblast/symbex.hpp"

namespace bitblast {

struct TranslateOptions {
    bool minimize = false;
    int limit = 12; // support cap for two-level minimization, in [2, 16]
    bool forward = false;
    uint64_t max_definitions = uint64_t(1) << 22;
};

// Full front half of the pipeline: analyze -> symbolic execution ->
// (minimize) -> Tseitin. The program is kept alongside so callers can run the
// reference interpreter against the same source.
struct Translation {
    TypedAst program;
    PropositionalEncoding encoding;
    ClauseSet cnf;
    SymbexStats stats;
};

Translation translate_source(const std::string& source,
                             const std::string& filename = "<input>",
                             const TranslateOptions& opts = {});

// Pluggable solving step, so an external solver can stand in for the
// built-in one. Must honor assumption literals.
using SolveFn =
    std::function<SolverResult(const ClauseSet&, std::span<const int> assumptions)>;

SolveFn internal_solver(uint64_t max_decisions = Solver::kDefaultDecisionCap);

struct VerifyOptions {
    uint64_t trials = 1000;
    uint64_t seed = 1;
    SolveFn solve; // defaults to the internal solver
};

struct VerifyReport {
    uint64_t trials = 0;
    uint64_t failures = 0;
    uint64_t seed = 0;
    double wall_ms = 0.0;
    std::vector<std::string> failing_inputs; // formatted assignments, for replay
};

// For each trial: draw random inputs, run the reference interpreter, solve
// the CNF under input-literal assumptions, and require a model whose output
// variables reproduce the interpreter's outputs.
VerifyReport verify_translation(const TypedAst& prog, const ClauseSet& cnf,
                                const VerifyOptions& opts = {});

struct InvertResult {
    SolveStatus status = SolveStatus::Unknown;
    ValueMap inputs;          // recovered preimage when Sat
    bool regenerates = false; // recovered inputs reproduce the target outputs
};

// Constrains the CNF's output variables to `target_outputs`, solves, extracts
// the input bits from the model, and re-checks them through the interpreter.
InvertResult invert_outputs(const TypedAst& prog, const ClauseSet& cnf,
                            const ValueMap& target_outputs, const SolveFn& solve = {});

// Random full-width inputs for every __in variable of the program.
ValueMap random_inputs(const TypedAst& prog, Rng& rng);

} // namespace bitblast
