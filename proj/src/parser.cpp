#include "bitblast/parser.hpp"

#include <utility>

namespace bitblast {

namespace {

class Parser {
public:
    Parser(std::vector<Token> tokens, std::string filename)
        : toks_(std::move(tokens)), file_(std::move(filename)) {}

    Ast run() {
        Ast ast;
        ast.file = file_;
        while (!done()) {
            Attribute attr = Attribute::None;
            SourceLoc start = peek().loc;
            if (accept_keyword("__in")) attr = Attribute::In;
            else if (accept_keyword("__out")) attr = Attribute::Out;

            Type type = expect_type();
            Token name = expect(TokenKind::Identifier, "identifier");

            if (peek_is_punct("(")) {
                if (attr != Attribute::None)
                    fail(start, "'__in'/'__out' cannot be applied to a function");
                ast.functions.push_back(parse_function(type, name));
            } else {
                parse_global_declarators(ast, attr, type, name, start);
            }
        }
        if (!ast.find_function("main"))
            fail(eof_loc(), "program has no 'main' function");
        return ast;
    }

private:
    std::vector<Token> toks_;
    std::string file_;
    size_t pos_ = 0;

    bool done() const { return pos_ >= toks_.size(); }
    const Token& peek(size_t ahead = 0) const {
        static const Token eof{};
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eof;
    }
    SourceLoc eof_loc() const {
        if (toks_.empty()) return {1, 1};
        SourceLoc l = toks_.back().loc;
        l.column += static_cast<int>(toks_.back().lexeme.size());
        return l;
    }
    SourceLoc here() const { return done() ? eof_loc() : peek().loc; }

    [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
        throw CompileError(file_, loc, msg);
    }

    Token advance() {
        if (done()) fail(eof_loc(), "unexpected end of input");
        return toks_[pos_++];
    }

    bool peek_is(TokenKind k, const char* text, size_t ahead = 0) const {
        return !done() && peek(ahead).is(k, text);
    }
    bool peek_is_punct(const char* text, size_t ahead = 0) const {
        return peek_is(TokenKind::Punctuator, text, ahead);
    }
    bool peek_is_op(const char* text) const { return peek_is(TokenKind::Operator, text); }

    bool accept(TokenKind k, const char* text) {
        if (peek_is(k, text)) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept_punct(const char* text) { return accept(TokenKind::Punctuator, text); }
    bool accept_op(const char* text) { return accept(TokenKind::Operator, text); }
    bool accept_keyword(const char* text) { return accept(TokenKind::Keyword, text); }

    Token expect(TokenKind k, const std::string& what) {
        if (done() || peek().kind != k)
            fail(here(), "expected " + what +
                             (done() ? " before end of input"
                                     : ", found '" + peek().lexeme + "'"));
        return advance();
    }
    void expect_punct(const char* text) {
        if (!accept_punct(text))
            fail(here(), std::string("expected '") + text + "'" +
                             (done() ? "" : ", found '" + peek().lexeme + "'"));
    }
    void expect_op(const char* text) {
        if (!accept_op(text))
            fail(here(), std::string("expected '") + text + "'" +
                             (done() ? "" : ", found '" + peek().lexeme + "'"));
    }

    bool peek_is_type() const {
        return peek_is(TokenKind::Keyword, "bit") || peek_is(TokenKind::Keyword, "int") ||
               peek_is(TokenKind::Keyword, "void");
    }

    Type expect_type() {
        if (accept_keyword("bit")) return Type::Bit;
        if (accept_keyword("int")) return Type::Int;
        if (accept_keyword("void")) return Type::Void;
        fail(here(), done() ? "expected type name"
                            : "expected type name, found '" + peek().lexeme + "'");
    }

    // --- declarations -----------------------------------------------------

    std::unique_ptr<VarDecl> parse_declarator(Type type, Token name, Attribute attr,
                                              bool global) {
        auto d = std::make_unique<VarDecl>();
        d->name = name.lexeme;
        d->type = type;
        d->attr = attr;
        d->loc = name.loc;
        d->is_global = global;
        if (accept_punct("[")) {
            d->is_array = true;
            d->length_expr = parse_expr();
            expect_punct("]");
        }
        if (accept_op("=")) d->init = parse_expr();
        return d;
    }

    void parse_global_declarators(Ast& ast, Attribute attr, Type type, Token first,
                                  SourceLoc /*start*/) {
        ast.globals.push_back(parse_declarator(type, first, attr, true));
        while (accept_punct(",")) {
            Token name = expect(TokenKind::Identifier, "identifier");
            ast.globals.push_back(parse_declarator(type, name, attr, true));
        }
        expect_punct(";");
    }

    std::unique_ptr<FunctionDecl> parse_function(Type ret, Token name) {
        auto fn = std::make_unique<FunctionDecl>();
        fn->name = name.lexeme;
        fn->return_type = ret;
        fn->loc = name.loc;
        expect_punct("(");
        if (!peek_is_punct(")")) {
            do {
                Type pt = expect_type();
                Token pn = expect(TokenKind::Identifier, "parameter name");
                auto p = std::make_unique<VarDecl>();
                p->name = pn.lexeme;
                p->type = pt;
                p->loc = pn.loc;
                p->is_param = true;
                if (accept_punct("[")) {
                    p->is_array = true;
                    p->length_expr = parse_expr();
                    expect_punct("]");
                }
                fn->params.push_back(std::move(p));
            } while (accept_punct(","));
        }
        expect_punct(")");
        if (!peek_is_punct("{")) fail(here(), "expected '{' to begin function body");
        fn->body = parse_block();
        return fn;
    }

    // --- statements -------------------------------------------------------

    StmtPtr parse_block() {
        auto s = std::make_unique<Stmt>();
        s->kind = StmtKind::Block;
        s->loc = here();
        expect_punct("{");
        while (!peek_is_punct("}")) {
            if (done()) fail(eof_loc(), "expected '}' before end of input");
            s->body.push_back(parse_statement());
        }
        expect_punct("}");
        return s;
    }

    StmtPtr parse_statement() {
        if (peek_is_punct("{")) return parse_block();
        if (peek_is(TokenKind::Keyword, "__in") || peek_is(TokenKind::Keyword, "__out"))
            fail(here(), "'__in'/'__out' attributes are only allowed on global declarations");
        if (peek_is_type()) return parse_local_decl();
        if (peek_is(TokenKind::Keyword, "if")) return parse_if();
        if (peek_is(TokenKind::Keyword, "for")) return parse_for();
        if (peek_is(TokenKind::Keyword, "return")) return parse_return();
        if (peek_is(TokenKind::Keyword, "else")) fail(here(), "'else' without matching 'if'");

        // Expression or assignment statement.
        auto s = parse_expr_or_assign();
        expect_punct(";");
        return s;
    }

    StmtPtr parse_local_decl() {
        auto s = std::make_unique<Stmt>();
        s->kind = StmtKind::Decl;
        s->loc = here();
        Type type = expect_type();
        do {
            Token name = expect(TokenKind::Identifier, "identifier");
            s->decls.push_back(parse_declarator(type, name, Attribute::None, false));
        } while (accept_punct(","));
        expect_punct(";");
        return s;
    }

    StmtPtr parse_if() {
        auto s = std::make_unique<Stmt>();
        s->kind = StmtKind::If;
        s->loc = here();
        advance(); // 'if'
        expect_punct("(");
        s->expr = parse_expr();
        expect_punct(")");
        s->then_branch = parse_statement();
        if (accept_keyword("else")) s->else_branch = parse_statement();
        return s;
    }

    StmtPtr parse_for() {
        auto s = std::make_unique<Stmt>();
        s->kind = StmtKind::For;
        s->loc = here();
        advance(); // 'for'
        expect_punct("(");
        s->init_stmt = parse_assignment_only();
        expect_punct(";");
        s->expr = parse_expr();
        expect_punct(";");
        s->step_stmt = parse_assignment_only();
        expect_punct(")");
        s->loop_body = parse_statement();
        return s;
    }

    StmtPtr parse_return() {
        auto s = std::make_unique<Stmt>();
        s->kind = StmtKind::Return;
        s->loc = here();
        advance(); // 'return'
        if (!peek_is_punct(";")) s->expr = parse_expr();
        expect_punct(";");
        return s;
    }

    static bool is_assign_op(const Token& t, AssignOp* out) {
        if (t.kind != TokenKind::Operator) return false;
        if (t.lexeme == "=") { *out = AssignOp::Set; return true; }
        if (t.lexeme == "^=") { *out = AssignOp::Xor; return true; }
        if (t.lexeme == "&=") { *out = AssignOp::And; return true; }
        if (t.lexeme == "|=") { *out = AssignOp::Or; return true; }
        if (t.lexeme == "+=") { *out = AssignOp::Add; return true; }
        if (t.lexeme == "-=") { *out = AssignOp::Sub; return true; }
        return false;
    }

    StmtPtr parse_expr_or_assign() {
        SourceLoc loc = here();
        ExprPtr e = parse_expr();
        AssignOp op;
        if (!done() && is_assign_op(peek(), &op)) {
            if (e->kind != ExprKind::VarRef && e->kind != ExprKind::Index)
                fail(peek().loc, "left side of assignment must be a variable or array element");
            advance();
            auto s = std::make_unique<Stmt>();
            s->kind = StmtKind::Assign;
            s->loc = loc;
            s->lhs = std::move(e);
            s->assign_op = op;
            s->expr = parse_expr();
            return s;
        }
        auto s = std::make_unique<Stmt>();
        s->kind = StmtKind::ExprStmt;
        s->loc = loc;
        s->expr = std::move(e);
        return s;
    }

    StmtPtr parse_assignment_only() {
        auto s = parse_expr_or_assign();
        if (s->kind != StmtKind::Assign)
            fail(s->loc, "expected an assignment");
        return s;
    }

    // --- expressions --------------------------------------------------------
    // Precedence ladder (low to high):
    //   ?:  ||  &&  |  ^  &  ==/!=  </<=/>/>=  <</>>  +-  */%  unary

    ExprPtr parse_expr() { return parse_ternary(); }

    ExprPtr parse_ternary() {
        ExprPtr cond = parse_binary(0);
        if (!accept_punct("?")) return cond;
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::Ternary;
        e->loc = cond->loc;
        e->a = std::move(cond);
        e->b = parse_expr();
        expect_punct(":");
        e->c = parse_ternary();
        return e;
    }

    struct OpEntry {
        const char* text;
        BinOp op;
        int prec;
    };

    static const OpEntry* lookup_binop(const Token& t) {
        static const OpEntry table[] = {
            {"||", BinOp::LogOr, 0},  {"&&", BinOp::LogAnd, 1},
            {"|", BinOp::BitOr, 2},   {"^", BinOp::BitXor, 3},
            {"&", BinOp::BitAnd, 4},  {"==", BinOp::Eq, 5},
            {"!=", BinOp::Ne, 5},     {"<", BinOp::Lt, 6},
            {"<=", BinOp::Le, 6},     {">", BinOp::Gt, 6},
            {">=", BinOp::Ge, 6},     {"<<", BinOp::Shl, 7},
            {">>", BinOp::Shr, 7},    {"+", BinOp::Add, 8},
            {"-", BinOp::Sub, 8},     {"*", BinOp::Mul, 9},
            {"/", BinOp::Div, 9},     {"%", BinOp::Mod, 9},
        };
        if (t.kind != TokenKind::Operator) return nullptr;
        for (const auto& entry : table)
            if (t.lexeme == entry.text) return &entry;
        return nullptr;
    }

    ExprPtr parse_binary(int min_prec) {
        ExprPtr lhs = parse_unary();
        while (!done()) {
            const OpEntry* entry = lookup_binop(peek());
            if (!entry || entry->prec < min_prec) break;
            advance();
            ExprPtr rhs = parse_binary(entry->prec + 1);
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::Binary;
            e->loc = lhs->loc;
            e->bin_op = entry->op;
            e->a = std::move(lhs);
            e->b = std::move(rhs);
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        SourceLoc loc = here();
        UnOp op;
        if (accept_op("!")) op = UnOp::LogNot;
        else if (accept_op("~")) op = UnOp::BitNot;
        else if (accept_op("-")) op = UnOp::Neg;
        else return parse_postfix();
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::Unary;
        e->loc = loc;
        e->un_op = op;
        e->a = parse_unary();
        return e;
    }

    ExprPtr parse_postfix() {
        ExprPtr base = parse_primary();
        if (base->kind == ExprKind::VarRef && accept_punct("[")) {
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::Index;
            e->loc = base->loc;
            e->name = base->name;
            e->a = parse_expr();
            expect_punct("]");
            return e;
        }
        return base;
    }

    ExprPtr parse_primary() {
        if (done()) fail(eof_loc(), "expected expression before end of input");
        const Token& t = peek();
        if (t.kind == TokenKind::IntLiteral) {
            Token lit = advance();
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::IntLit;
            e->loc = lit.loc;
            e->value = lit.value;
            return e;
        }
        if (t.kind == TokenKind::Identifier) {
            Token name = advance();
            if (accept_punct("(")) {
                auto e = std::make_unique<Expr>();
                e->kind = ExprKind::Call;
                e->loc = name.loc;
                e->name = name.lexeme;
                if (!peek_is_punct(")")) {
                    do {
                        e->args.push_back(parse_expr());
                    } while (accept_punct(","));
                }
                expect_punct(")");
                return e;
            }
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::VarRef;
            e->loc = name.loc;
            e->name = name.lexeme;
            return e;
        }
        if (accept_punct("(")) {
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        fail(t.loc, "expected expression, found '" + t.lexeme + "'");
    }
};

} // namespace

Ast parse(std::vector<Token> tokens, const std::string& filename) {
    Parser p(std::move(tokens), filename);
    return p.run();
}

Ast parse_source(const std::string& source, const std::string& filename) {
    return parse(tokenize(source, filename), filename);
}

} // namespace bitblast
