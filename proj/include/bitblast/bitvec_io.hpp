#pragma once

#include <string>
#include <vector>

#include "bitblast/interp.hpp"

namespace bitblast {

// Textual bit-vector assignments of the form `name=0x5A3F7:19` (hex) or
// `name=0b101:3` (binary), with an explicit bit width. The value's most
// significant bit maps to array index 0; a scalar has width 1.
//
// parse_assignment throws std::invalid_argument on malformed text or when the
// value does not fit the stated width.
std::pair<std::string, std::vector<uint8_t>> parse_assignment(const std::string& text);

// Renders bits back to `name=0x...:w` (zero-padded hex, same bit order).
std::string format_assignment(const std::string& name, const std::vector<uint8_t>& bits);

} // namespace bitblast
