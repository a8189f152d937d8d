#pragma once

#include <string>
#include <vector>

#include "bitblast/ast.hpp"
#include "bitblast/lexer.hpp"

namespace bitblast {

// Recursive-descent parser. `else` binds to the nearest `if`. A program must
// define a `main` function. Throws CompileError on the first syntax error.
Ast parse(std::vector<Token> tokens, const std::string& filename = "<input>");

// Convenience: tokenize + parse.
Ast parse_source(const std::string& source, const std::string& filename = "<input>");

} // namespace bitblast
