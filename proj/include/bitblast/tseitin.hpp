#pragma once

#include "bitblast/cnf.hpp"
#include "bitblast/encoding.hpp"

namespace bitblast {

// Clausifies an encoding: one DIMACS variable per encoding variable, one fresh
// variable per internal DAG gate. Shared subformulas are clausified once; the
// root gate of each definition reuses the definition variable itself. Full
// (both-direction) equivalence clauses are emitted per gate:
//   Not 2, And/Or 3, Xor/Equiv 4, Ite 4 (the two redundant propagation
//   clauses omitted).
//
// A definition carrying a minimizer cover is emitted as its two-level clause
// form (|on| + |off| clauses, no gate variables) unless the structural gate
// clausification of that definition would be smaller.
ClauseSet tseitin(const PropositionalEncoding& enc);

} // namespace bitblast
