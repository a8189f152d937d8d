#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bitblast/diag.hpp"

namespace bitblast {

enum class TokenKind : uint8_t {
    Keyword,
    Identifier,
    IntLiteral,
    Punctuator,
    Operator,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string lexeme;
    uint64_t value = 0; // IntLiteral only
    SourceLoc loc;

    bool is(TokenKind k, const char* text) const {
        return kind == k && lexeme == text;
    }
};

// Splits source text into tokens. Comments (`//` to end of line, `/* */`
// non-nested) and whitespace produce no tokens. Integer literals are decimal
// or 0x-prefixed hexadecimal and must fit in 64 bits. The trailing
// EndOfFile token is not included in the returned list.
std::vector<Token> tokenize(const std::string& source,
                            const std::string& filename = "<input>");

} // namespace bitblast
