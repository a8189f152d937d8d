#include <doctest.h>

#include "bitblast/lexer.hpp"
#include "bitblast/parser.hpp"
#include "bitblast/scope.hpp"
#include "helpers.hpp"

using namespace bitblast;

TEST_CASE("tokenize: smallest declaration") {
    auto toks = tokenize("bit x;");
    REQUIRE(toks.size() == 3);
    CHECK(toks[0].kind == TokenKind::Keyword);
    CHECK(toks[0].lexeme == "bit");
    CHECK(toks[1].kind == TokenKind::Identifier);
    CHECK(toks[1].lexeme == "x");
    CHECK(toks[2].kind == TokenKind::Punctuator);
    CHECK(toks[2].lexeme == ";");
}

TEST_CASE("tokenize: array subscript") {
    auto toks = tokenize("reg[0]");
    REQUIRE(toks.size() == 4);
    CHECK(toks[0].kind == TokenKind::Identifier);
    CHECK(toks[1].lexeme == "[");
    CHECK(toks[2].kind == TokenKind::IntLiteral);
    CHECK(toks[2].value == 0);
    CHECK(toks[3].lexeme == "]");
}

TEST_CASE("tokenize: empty input") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("  \n\t // just a comment\n/* and a block */").empty());
}

TEST_CASE("tokenize: literals, operators, positions") {
    auto toks = tokenize("x ^= 0x1F >> 2;\ny = 10;");
    CHECK(toks[1].lexeme == "^=");
    CHECK(toks[2].value == 0x1F);
    CHECK(toks[3].lexeme == ">>");
    CHECK(toks[4].value == 2);
    // second line positions
    CHECK(toks[6].loc.line == 2);
    CHECK(toks[6].loc.column == 1);
}

TEST_CASE("tokenize: every lexeme is a substring of the source at its location") {
    std::string src = testutil::corpus_source("a51.bit");
    std::vector<std::string> lines;
    {
        std::istringstream is(src);
        std::string l;
        while (std::getline(is, l)) lines.push_back(l);
    }
    for (const Token& t : tokenize(src)) {
        REQUIRE(t.loc.line >= 1);
        REQUIRE(static_cast<size_t>(t.loc.line) <= lines.size());
        const std::string& line = lines[static_cast<size_t>(t.loc.line - 1)];
        REQUIRE(!t.lexeme.empty());
        CHECK(line.compare(static_cast<size_t>(t.loc.column - 1), t.lexeme.size(), t.lexeme) ==
              0);
    }
}

TEST_CASE("tokenize: errors carry line and column") {
    CHECK_THROWS_WITH_AS(tokenize("bit $;"), doctest::Contains("illegal character"),
                         CompileError);
    try {
        tokenize("bit a;\n/* open", "f.bit");
        FAIL("expected error");
    } catch (const CompileError& e) {
        CHECK(e.loc().line == 2);
        CHECK(e.loc().column == 1);
        CHECK(std::string(e.what()).find("unterminated block comment") != std::string::npos);
    }
    CHECK_THROWS_AS(tokenize("x = 0x;"), CompileError);
    CHECK_THROWS_AS(tokenize("x = 99999999999999999999999;"), CompileError);
}

TEST_CASE("parse: empty main") {
    Ast ast = parse_source("void main() {}");
    REQUIRE(ast.functions.size() == 1);
    CHECK(ast.functions[0]->name == "main");
    CHECK(ast.functions[0]->return_type == Type::Void);
    CHECK(ast.functions[0]->body->body.empty());
}

TEST_CASE("parse: LFSR corpus program shape") {
    Ast ast = parse_source(testutil::corpus_source("lfsr.bit"));
    REQUIRE(ast.functions.size() == 2);
    CHECK(ast.functions[0]->name == "shift_reg");
    CHECK(ast.functions[1]->name == "main");
    REQUIRE(ast.globals.size() == 3);
    CHECK(ast.globals[0]->type == Type::Int);
    CHECK(ast.globals[1]->attr == Attribute::In);
    CHECK(ast.globals[1]->is_array);
    CHECK(ast.globals[2]->attr == Attribute::Out);
    CHECK(ast.globals[2]->is_array);
}

TEST_CASE("parse: if/else populates both branches, else binds to nearest if") {
    Ast ast = parse_source("bit a, x, y, z;\n"
                           "void main() { if (a) x = y; else x = z; }");
    const Stmt& s = *ast.functions[0]->body->body[0];
    REQUIRE(s.kind == StmtKind::If);
    REQUIRE(s.then_branch != nullptr);
    REQUIRE(s.else_branch != nullptr);
    CHECK(s.then_branch->kind == StmtKind::Assign);
    CHECK(s.else_branch->kind == StmtKind::Assign);

    // dangling else
    Ast d = parse_source("bit a, b, x;\n"
                         "void main() { if (a) if (b) x = 1; else x = 0; }");
    const Stmt& outer = *d.functions[0]->body->body[0];
    REQUIRE(outer.kind == StmtKind::If);
    CHECK(outer.else_branch == nullptr);
    REQUIRE(outer.then_branch->kind == StmtKind::If);
    CHECK(outer.then_branch->else_branch != nullptr);
}

TEST_CASE("parse: operator precedence") {
    Ast ast = parse_source("bit a, b, c, x;\nvoid main() { x = a & b ^ b & c ^ c; }");
    const Stmt& s = *ast.functions[0]->body->body[0];
    // ((a&b) ^ (b&c)) ^ c
    REQUIRE(s.expr->kind == ExprKind::Binary);
    CHECK(s.expr->bin_op == BinOp::BitXor);
    CHECK(s.expr->b->kind == ExprKind::VarRef);
    REQUIRE(s.expr->a->kind == ExprKind::Binary);
    CHECK(s.expr->a->bin_op == BinOp::BitXor);
    CHECK(s.expr->a->a->bin_op == BinOp::BitAnd);
    CHECK(s.expr->a->b->bin_op == BinOp::BitAnd);
}

TEST_CASE("parse: pretty-print round-trip is structurally identical on the corpus") {
    for (const char* name : {"lfsr.bit", "geffe.bit", "a51.bit"}) {
        CAPTURE(name);
        Ast first = parse_source(testutil::corpus_source(name));
        std::string printed = pretty_print(first);
        Ast second = parse_source(printed);
        CHECK(struct_equal(first, second));
        // idempotent: printing again yields the same text
        CHECK(pretty_print(second) == printed);
    }
}

TEST_CASE("parse: missing main") {
    CHECK_THROWS_WITH_AS(parse_source("bit a;"), doctest::Contains("no 'main'"), CompileError);
}

TEST_CASE("parse: a curated set of malformed programs is rejected with located diagnostics") {
    const char* bad[] = {
        "void main() {",                              // unterminated block
        "void main() }",                              // missing open brace
        "void main() { bit }",                        // declarator expected
        "void main() { x = ; }",                      // missing rhs
        "void main() { if a) x = 1; }",               // missing (
        "void main() { if (a x = 1; }",               // missing )
        "void main() { for (;;) x = 1; }",            // for needs assignments
        "void main() { for (i = 0; i < 3) i = 1; }",  // missing step
        "void main() { return 1 }",                   // missing semicolon
        "void main() { 1 = x; }",                     // lvalue required
        "void main() { x + ; }",                      // dangling operator
        "void main() { bit a[; }",                    // bad array length
        "void main() { a[1 = 0; }",                   // missing ]
        "void main() { f(; }",                        // bad call
        "void main() { (a; }",                        // missing )
        "void main() { else x = 1; }",                // stray else
        "bit f( { }",                                 // bad parameter list
        "bit f(bit) {}",                              // parameter name missing
        "__in void main() {}",                        // attribute on function
        "void main() { __in bit a; }",                // attribute on local
        "int 5x;",                                    // bad identifier
        "void main() { x ? y; }",                     // ternary missing colon
        "void main(); ",                              // missing body
    };
    int count = 0;
    for (const char* src : bad) {
        CAPTURE(src);
        try {
            parse_source(src, "bad.bit");
            FAIL_CHECK("accepted malformed program: " << src);
        } catch (const CompileError& e) {
            ++count;
            CHECK(e.loc().line >= 1);
            CHECK(e.loc().column >= 1);
            CHECK(std::string(e.what()).rfind("bad.bit:", 0) == 0);
        } catch (const std::exception& e) {
            FAIL_CHECK("wrong exception type for: " << src << " (" << e.what() << ")");
        }
    }
    CHECK(count >= 20);
}

TEST_CASE("scope: globals resolve from inside functions") {
    Ast ast = parse_source(testutil::corpus_source("lfsr.bit"));
    ScopeTree tree = build_scope_tree(ast);
    // reg[...] uses inside shift_reg bind to the root-scope declaration
    const VarDecl* reg = tree.root()->lookup("reg");
    REQUIRE(reg != nullptr);
    const Stmt& fb_assign = *ast.functions[0]->body->body[2];
    REQUIRE(fb_assign.kind == StmtKind::Assign);
    CHECK(fb_assign.expr->a->a->a->decl == reg);
}

TEST_CASE("scope: shadowing binds innermost") {
    Ast ast = parse_source("void main() { bit t; t = 0; { bit t; t = 1; } }");
    build_scope_tree(ast);
    const auto& body = ast.functions[0]->body->body;
    const VarDecl* outer = body[0]->decls[0].get();
    const Stmt& inner_block = *body[2];
    const VarDecl* inner = inner_block.body[0]->decls[0].get();
    CHECK(outer != inner);
    CHECK(body[1]->lhs->decl == outer);
    CHECK(inner_block.body[1]->lhs->decl == inner);
}

TEST_CASE("scope: undeclared identifier and redeclaration") {
    Ast a = parse_source("void main() { y = 1; }");
    CHECK_THROWS_WITH_AS(build_scope_tree(a), doctest::Contains("undeclared identifier 'y'"),
                         CompileError);
    Ast b = parse_source("void main() { bit t; int t; }");
    CHECK_THROWS_WITH_AS(build_scope_tree(b), doctest::Contains("redeclaration"), CompileError);
    Ast c = parse_source("bit g; int g; void main() {}");
    CHECK_THROWS_AS(build_scope_tree(c), CompileError);
}
