#pragma once

#include <cstdint>
#include <map>
#include <set>

#include "bitblast/encoding.hpp"
#include "bitblast/semantics.hpp"

namespace bitblast {

struct SymbexOptions {
    // Forward compound right-hand sides instead of introducing a definition
    // variable per assignment. Off by default: one definition per compound
    // assignment keeps clausification predictable.
    bool forward = false;
    uint64_t max_definitions = uint64_t(1) << 22;
    uint64_t max_steps = uint64_t(1) << 22;
};

struct SymbexStats {
    // Trip counts observed per for-statement (one set entry per distinct
    // bound), comparable against the concrete interpreter's counts.
    std::map<const Stmt*, std::set<int64_t>> loop_trip_counts;
    uint64_t statements_executed = 0;
};

// Symbolically executes `main` with loops fully unrolled and calls inlined,
// producing the propositional encoding of the program's bit semantics.
//
// Bindings follow the copy-propagation discipline: moving a bit value between
// program variables never allocates an encoding variable; only a compound
// right-hand side (or a conditional merge) introduces a definition. Each
// conditional merge over condition phi and branch values d1/d2 contributes
// x' == ite(phi, d1, d2), i.e. phi*d1 | !phi*d2.
PropositionalEncoding symbolic_translate(const TypedAst& prog,
                                         const SymbexOptions& opts = {},
                                         SymbexStats* stats = nullptr);

} // namespace bitblast
