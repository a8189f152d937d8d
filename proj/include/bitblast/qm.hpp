#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bitblast/encoding.hpp"

namespace bitblast {

// Truth table of f over the given support variables: entry m holds the value
// of f when support[j] = bit j of m. Support must cover f's variables.
std::vector<uint8_t> truth_table(const FormulaArena& arena, NodeId f,
                                 std::span<const uint32_t> support);

// Prime-implicant cover of the ON-set of an n-variable truth table
// (Quine-McCluskey with essential primes plus greedy completion). The result
// is deterministic and canonically ordered. n must be at most 20.
std::vector<Cube> qm_cover(const std::vector<uint8_t>& truth, int n);

// True if the cube contains minterm m.
inline bool cube_covers(const Cube& c, uint32_t m) {
    return ((m ^ c.bits) & c.mask) == 0;
}

// Value of the cover at minterm m (disjunction of cubes).
bool cover_eval(std::span<const Cube> cover, uint32_t m);

} // namespace bitblast
