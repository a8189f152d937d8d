#pragma once

#include "bitblast/encoding.hpp"

namespace bitblast {

// Splits every definition whose support exceeds `limit`: repeatedly extracts
// the sub-DAG with the largest support not exceeding the limit (deepest
// first, then lowest minimum variable id) into a fresh auxiliary definition,
// until the remaining body fits. Insertion keeps the encoding stratified.
void split_oversized(PropositionalEncoding& enc, int limit);

// Two-level minimization: after splitting to the support cap, every
// definition body with non-trivial support is replaced by the prime-implicant
// cover of its truth table (greedy Quine-McCluskey cover); the complement
// cover is attached alongside for direct clausification. The result is
// logically equivalent to the input.
void minimize_encoding(PropositionalEncoding& enc, int limit = 12);

} // namespace bitblast
