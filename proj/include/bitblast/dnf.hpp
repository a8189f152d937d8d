#pragma once

#include <string>

#include "bitblast/encoding.hpp"

namespace bitblast {

// Per-definition DNF text, one line per definition:
//   `x3 = x1*~x2 | ~x1*x2`, `|` separates terms, `*` conjunction, `~` negation;
// constants print as `0` / `1`. With `minimized_cover` the terms are the
// greedy prime-implicant cover, otherwise the full minterm expansion.
//
// A definition with support larger than `guard` raises std::runtime_error
// instructing to split/minimize first.
std::string emit_dnf(const PropositionalEncoding& enc, bool minimized_cover,
                     int guard = 16);

} // namespace bitblast
