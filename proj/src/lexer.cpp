#include "bitblast/lexer.hpp"

#include <array>
#include <cctype>
#include <string_view>

namespace bitblast {

namespace {

const std::array<std::string_view, 9> kKeywords = {
    "bit", "int", "void", "if", "else", "for", "return", "__in", "__out",
};

bool is_keyword(std::string_view s) {
    for (auto k : kKeywords)
        if (k == s) return true;
    return false;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Cursor {
    const std::string& src;
    const std::string& file;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= src.size(); }
    char peek(size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }
    char advance() {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    SourceLoc loc() const { return {line, col}; }
    [[noreturn]] void fail(SourceLoc at, const std::string& msg) const {
        throw CompileError(file, at, msg);
    }
};

// Longest-match operator table; order matters (two-char before one-char).
const std::array<std::string_view, 25> kOperators = {
    "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "^=", "&=", "|=", "+=", "-=",
    "+",  "-",  "*",  "/",  "%",  "!",  "~",
    "^",  "&",  "|",  "<",  ">",
};

} // namespace

std::vector<Token> tokenize(const std::string& source, const std::string& filename) {
    std::vector<Token> out;
    Cursor cur{source, filename};

    while (!cur.done()) {
        char c = cur.peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            cur.advance();
            continue;
        }
        if (c == '/' && cur.peek(1) == '/') {
            while (!cur.done() && cur.peek() != '\n') cur.advance();
            continue;
        }
        if (c == '/' && cur.peek(1) == '*') {
            SourceLoc start = cur.loc();
            cur.advance();
            cur.advance();
            bool closed = false;
            while (!cur.done()) {
                if (cur.peek() == '*' && cur.peek(1) == '/') {
                    cur.advance();
                    cur.advance();
                    closed = true;
                    break;
                }
                cur.advance();
            }
            if (!closed) cur.fail(start, "unterminated block comment");
            continue;
        }

        SourceLoc loc = cur.loc();

        if (is_ident_start(c)) {
            std::string lex;
            while (!cur.done() && is_ident_char(cur.peek())) lex.push_back(cur.advance());
            Token t;
            t.kind = is_keyword(lex) ? TokenKind::Keyword : TokenKind::Identifier;
            t.lexeme = std::move(lex);
            t.loc = loc;
            out.push_back(std::move(t));
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lex;
            uint64_t value = 0;
            if (c == '0' && (cur.peek(1) == 'x' || cur.peek(1) == 'X')) {
                lex.push_back(cur.advance());
                lex.push_back(cur.advance());
                if (!std::isxdigit(static_cast<unsigned char>(cur.peek())))
                    cur.fail(loc, "hexadecimal literal needs at least one digit");
                while (std::isxdigit(static_cast<unsigned char>(cur.peek()))) {
                    char d = cur.advance();
                    lex.push_back(d);
                    uint64_t digit = std::isdigit(static_cast<unsigned char>(d))
                                         ? static_cast<uint64_t>(d - '0')
                                         : static_cast<uint64_t>(std::tolower(d) - 'a' + 10);
                    if (value > (UINT64_MAX - digit) / 16)
                        cur.fail(loc, "integer literal does not fit in 64 bits");
                    value = value * 16 + digit;
                }
            } else {
                while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
                    char d = cur.advance();
                    lex.push_back(d);
                    uint64_t digit = static_cast<uint64_t>(d - '0');
                    if (value > (UINT64_MAX - digit) / 10)
                        cur.fail(loc, "integer literal does not fit in 64 bits");
                    value = value * 10 + digit;
                }
            }
            if (is_ident_start(cur.peek()))
                cur.fail(cur.loc(), std::string("unexpected character '") + cur.peek() +
                                        "' in integer literal");
            Token t;
            t.kind = TokenKind::IntLiteral;
            t.lexeme = std::move(lex);
            t.value = value;
            t.loc = loc;
            out.push_back(std::move(t));
            continue;
        }

        if (c == '(' || c == ')' || c == '{' || c == '}' || c == '[' || c == ']' ||
            c == ';' || c == ',' || c == '?' || c == ':') {
            Token t;
            t.kind = TokenKind::Punctuator;
            t.lexeme = std::string(1, cur.advance());
            t.loc = loc;
            out.push_back(std::move(t));
            continue;
        }

        bool matched = false;
        for (auto op : kOperators) {
            if (source.compare(cur.pos, op.size(), op) == 0) {
                Token t;
                t.kind = TokenKind::Operator;
                t.lexeme = std::string(op);
                t.loc = loc;
                for (size_t i = 0; i < op.size(); ++i) cur.advance();
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (matched) continue;

        if (c == '=') { // plain assignment, kept out of kOperators so "==" wins above
            Token t;
            t.kind = TokenKind::Operator;
            t.lexeme = "=";
            t.loc = loc;
            cur.advance();
            out.push_back(std::move(t));
            continue;
        }

        cur.fail(loc, std::string("illegal character '") + c + "'");
    }

    return out;
}

} // namespace bitblast
