#pragma once

#include <string>
#include <vector>

#include "bitblast/encoding.hpp"

namespace bitblast {

// One equation x = m1 + m2 + ... over GF(2); a monomial is a set of variable
// ids (empty set = the constant 1). Monomials are duplicate-free and sorted
// by descending degree, then ascending variable ids.
struct AnfEquation {
    uint32_t var;
    std::vector<std::vector<uint32_t>> monomials;
};

struct AnfSystem {
    std::vector<AnfEquation> equations;
};

// Algebraic normal form of every definition, by Mobius transform of its truth
// table. Definitions with support beyond `split_limit` are first divided into
// auxiliary definitions (mutating the encoding).
AnfSystem emit_anf(PropositionalEncoding& enc, int split_limit = 16);

// Text form, one equation per line: `x5 = x1*x2 + x3 + 1`, `+` is the GF(2)
// sum, `*` is conjunction. The zero polynomial prints as `0`.
std::string to_string(const AnfSystem& anf);

} // namespace bitblast
