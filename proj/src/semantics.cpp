#include "bitblast/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "bitblast/lexer.hpp"
#include "bitblast/parser.hpp"

namespace bitblast {

namespace {

class Checker {
public:
    explicit Checker(Ast& ast) : ast_(ast) {}

    void run() {
        resolve_global_constants();
        for (auto& fn : ast_.functions) check_function(*fn);
        check_main();
        check_recursion();
    }

private:
    Ast& ast_;
    const FunctionDecl* current_fn_ = nullptr;
    // Values of global int variables as established by their initializers,
    // used for resolving array lengths at analysis time.
    std::map<const VarDecl*, int64_t> global_ints_;
    std::map<const FunctionDecl*, std::set<const FunctionDecl*>> calls_;

    [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
        throw CompileError(ast_.file, loc, msg);
    }

    ConstEnv global_env() const {
        ConstEnv env;
        env.lookup = [this](const VarDecl* d, int64_t) -> std::optional<int64_t> {
            auto it = global_ints_.find(d);
            if (it == global_ints_.end()) return std::nullopt;
            return it->second;
        };
        return env;
    }

    void resolve_array_length(VarDecl& d) {
        if (!d.is_array) {
            d.length = 1;
            return;
        }
        check_expr(*d.length_expr);
        if (d.length_expr->type != Type::Int)
            fail(d.length_expr->loc, "array length must be an int expression");
        d.length = const_eval(*d.length_expr, global_env(), ast_.file);
        if (d.length < 1)
            fail(d.length_expr->loc, "array length must be at least 1, got " +
                                         std::to_string(d.length));
    }

    void resolve_global_constants() {
        for (auto& g : ast_.globals) {
            if (g->type == Type::Void)
                fail(g->loc, "variable '" + g->name + "' declared void");
            resolve_array_length(*g);
            if (g->attr != Attribute::None && g->type != Type::Bit)
                fail(g->loc, "'__in'/'__out' attributes require the bit type");
            if (g->attr == Attribute::In && g->init)
                fail(g->loc, "'__in' variable '" + g->name + "' cannot have an initializer");
            if (g->init) {
                if (g->is_array)
                    fail(g->init->loc, "array '" + g->name + "' cannot have an initializer");
                check_expr(*g->init);
                if (g->type == Type::Int) {
                    require_int(*g->init, "initializer of int variable");
                    global_ints_[g.get()] = const_eval(*g->init, global_env(), ast_.file);
                } else {
                    coerce_to_bit(*g->init, "initializer of bit variable");
                }
            }
        }
    }

    void check_main() {
        const FunctionDecl* main = ast_.find_function("main");
        // Presence is already guaranteed by the parser.
        if (main->return_type != Type::Void)
            fail(main->loc, "'main' must return void");
        if (!main->params.empty())
            fail(main->loc, "'main' takes no parameters");
    }

    void check_recursion() {
        // DFS over the call graph; report the cycle by name.
        std::map<const FunctionDecl*, int> state; // 0 new, 1 active, 2 done
        std::vector<const FunctionDecl*> stack;
        for (auto& fn : ast_.functions) {
            if (state[fn.get()] == 0) dfs(fn.get(), state, stack);
        }
    }

    void dfs(const FunctionDecl* fn, std::map<const FunctionDecl*, int>& state,
             std::vector<const FunctionDecl*>& stack) {
        state[fn] = 1;
        stack.push_back(fn);
        for (const FunctionDecl* callee : calls_[fn]) {
            if (state[callee] == 1) {
                std::string cycle;
                auto it = std::find(stack.begin(), stack.end(), callee);
                for (; it != stack.end(); ++it) cycle += (*it)->name + " -> ";
                cycle += callee->name;
                fail(fn->loc, "recursion is not allowed: " + cycle);
            }
            if (state[callee] == 0) dfs(callee, state, stack);
        }
        stack.pop_back();
        state[fn] = 2;
    }

    void check_function(FunctionDecl& fn) {
        current_fn_ = &fn;
        for (auto& p : fn.params) {
            if (p->type == Type::Void)
                fail(p->loc, "parameter '" + p->name + "' declared void");
            resolve_array_length(*p);
        }
        check_block(*fn.body);
        check_return_shape(fn);
        current_fn_ = nullptr;
    }

    // Non-void functions must end in exactly one `return expr;`, as the final
    // statement of the top-level body; no other return may appear anywhere.
    // Void functions may optionally end in a bare `return;`.
    void check_return_shape(const FunctionDecl& fn) {
        const auto& body = fn.body->body;
        size_t returns_seen = 0;
        const Stmt* final_return = nullptr;
        for (size_t i = 0; i < body.size(); ++i) {
            returns_seen += count_returns(*body[i]);
            if (body[i]->kind == StmtKind::Return && i + 1 == body.size())
                final_return = body[i].get();
        }
        if (fn.return_type == Type::Void) {
            if (returns_seen > 1 || (returns_seen == 1 && !final_return))
                fail(fn.loc, "'" + fn.name +
                                 "': return is only allowed as the final statement");
            if (final_return && final_return->expr)
                fail(final_return->loc, "void function cannot return a value");
            return;
        }
        if (!final_return)
            fail(fn.loc, "'" + fn.name + "' must end with a return statement");
        if (returns_seen != 1)
            fail(fn.loc, "'" + fn.name +
                             "': return is only allowed as the final statement");
        if (!final_return->expr)
            fail(final_return->loc, "return without a value in a function returning " +
                                        std::string(type_name(fn.return_type)));
    }

    size_t count_returns(const Stmt& s) const {
        switch (s.kind) {
        case StmtKind::Return:
            return 1;
        case StmtKind::Block: {
            size_t n = 0;
            for (const auto& child : s.body) n += count_returns(*child);
            return n;
        }
        case StmtKind::If:
            return count_returns(*s.then_branch) +
                   (s.else_branch ? count_returns(*s.else_branch) : 0);
        case StmtKind::For:
            return count_returns(*s.loop_body);
        default:
            return 0;
        }
    }

    void check_block(Stmt& block) {
        for (auto& s : block.body) check_stmt(*s);
    }

    void check_stmt(Stmt& s) {
        switch (s.kind) {
        case StmtKind::Block:
            check_block(s);
            return;
        case StmtKind::Decl:
            for (auto& d : s.decls) {
                if (d->type == Type::Void)
                    fail(d->loc, "variable '" + d->name + "' declared void");
                resolve_array_length(*d);
                if (d->init) {
                    if (d->is_array)
                        fail(d->init->loc, "array '" + d->name + "' cannot have an initializer");
                    check_expr(*d->init);
                    if (d->type == Type::Int)
                        require_int(*d->init, "initializer of int variable");
                    else
                        coerce_to_bit(*d->init, "initializer of bit variable");
                }
            }
            return;
        case StmtKind::ExprStmt:
            check_expr(*s.expr);
            return;
        case StmtKind::Assign:
            check_assign(s);
            return;
        case StmtKind::If:
            check_expr(*s.expr);
            if (s.expr->type == Type::Void)
                fail(s.expr->loc, "condition cannot be void");
            check_stmt(*s.then_branch);
            if (s.else_branch) check_stmt(*s.else_branch);
            return;
        case StmtKind::For:
            check_stmt(*s.init_stmt);
            check_expr(*s.expr);
            if (s.expr->type == Type::Bit)
                fail(s.expr->loc,
                     "loop bound depends on bit data; bounds must be compile-time int "
                     "expressions");
            require_int(*s.expr, "loop condition");
            check_stmt(*s.step_stmt);
            check_stmt(*s.loop_body);
            return;
        case StmtKind::Return:
            if (s.expr) {
                check_expr(*s.expr);
                if (current_fn_->return_type == Type::Bit)
                    coerce_to_bit(*s.expr, "return value");
                else if (current_fn_->return_type == Type::Int)
                    require_int(*s.expr, "return value");
            }
            return;
        }
    }

    void check_assign(Stmt& s) {
        check_expr(*s.lhs);
        check_expr(*s.expr);
        Type lhs_type = s.lhs->type;
        if (s.assign_op == AssignOp::Add || s.assign_op == AssignOp::Sub) {
            if (lhs_type != Type::Int)
                fail(s.loc, "'+='/'-=' require an int left side");
        }
        if (lhs_type == Type::Int) {
            require_int(*s.expr, "assignment to int variable");
        } else {
            coerce_to_bit(*s.expr, "assignment to bit variable");
        }
    }

    void require_int(const Expr& e, const std::string& what) const {
        if (e.type != Type::Int)
            fail(e.loc, what + " must be of type int, got " + type_name(e.type));
    }

    // Integer literals 0 and 1 are usable where a bit is expected; no other
    // int expression converts.
    void coerce_to_bit(Expr& e, const std::string& what) const {
        if (e.type == Type::Bit) return;
        if (e.kind == ExprKind::IntLit && e.value <= 1) {
            e.type = Type::Bit;
            return;
        }
        fail(e.loc, what + " must be of type bit, got " + type_name(e.type));
    }

    // Returns true if `e` could be coerced so both operands have equal type.
    void unify_bit_operands(Expr& a, Expr& b, const char* op) const {
        if (a.type == Type::Bit && b.type != Type::Bit)
            coerce_to_bit(b, std::string("operand of '") + op + "'");
        else if (b.type == Type::Bit && a.type != Type::Bit)
            coerce_to_bit(a, std::string("operand of '") + op + "'");
    }

    void check_expr(Expr& e) {
        switch (e.kind) {
        case ExprKind::IntLit:
            e.type = Type::Int;
            return;
        case ExprKind::VarRef: {
            const VarDecl* d = e.decl;
            if (d->is_array)
                fail(e.loc, "array '" + e.name + "' cannot be used as a scalar value");
            e.type = d->type;
            return;
        }
        case ExprKind::Index: {
            const VarDecl* d = e.decl;
            if (!d->is_array)
                fail(e.loc, "'" + e.name + "' is not an array");
            check_expr(*e.a);
            require_int(*e.a, "array index");
            if (e.a->kind == ExprKind::IntLit) {
                int64_t idx = static_cast<int64_t>(e.a->value);
                if (idx >= d->length)
                    fail(e.a->loc, "index " + std::to_string(idx) + " out of bounds for '" +
                                       e.name + "[" + std::to_string(d->length) + "]'");
            }
            e.type = d->type;
            return;
        }
        case ExprKind::Unary:
            check_expr(*e.a);
            if (e.a->type == Type::Void) fail(e.loc, "operand cannot be void");
            if (e.un_op == UnOp::Neg) {
                require_int(*e.a, "operand of unary '-'");
                e.type = Type::Int;
            } else {
                e.type = e.a->type; // !/~ on bit -> bit, on int -> int
            }
            return;
        case ExprKind::Binary:
            check_binary(e);
            return;
        case ExprKind::Ternary: {
            check_expr(*e.a);
            check_expr(*e.b);
            check_expr(*e.c);
            if (e.a->type == Type::Void) fail(e.a->loc, "condition cannot be void");
            if (e.a->type == Type::Bit) {
                coerce_to_bit(*e.b, "conditional branch");
                coerce_to_bit(*e.c, "conditional branch");
                e.type = Type::Bit;
            } else {
                // int condition selects at translation time
                if (e.b->type == Type::Bit || e.c->type == Type::Bit) {
                    coerce_to_bit(*e.b, "conditional branch");
                    coerce_to_bit(*e.c, "conditional branch");
                    e.type = Type::Bit;
                } else {
                    require_int(*e.b, "conditional branch");
                    require_int(*e.c, "conditional branch");
                    e.type = Type::Int;
                }
            }
            return;
        }
        case ExprKind::Call: {
            const FunctionDecl* fn = e.callee;
            if (e.args.size() != fn->params.size())
                fail(e.loc, "'" + fn->name + "' expects " +
                                std::to_string(fn->params.size()) + " argument(s), got " +
                                std::to_string(e.args.size()));
            for (size_t i = 0; i < e.args.size(); ++i) {
                Expr& arg = *e.args[i];
                const VarDecl& p = *fn->params[i];
                if (p.is_array) {
                    if (arg.kind != ExprKind::VarRef || !arg.decl || !arg.decl->is_array)
                        fail(arg.loc, "argument for array parameter '" + p.name +
                                          "' must be an array variable");
                    if (arg.decl->type != p.type)
                        fail(arg.loc, "array argument type mismatch for '" + p.name + "'");
                    if (arg.decl->length != p.length)
                        fail(arg.loc, "array argument length mismatch for '" + p.name +
                                          "': expected " + std::to_string(p.length) +
                                          ", got " + std::to_string(arg.decl->length));
                    arg.type = p.type; // element type; marker only
                    continue;
                }
                check_expr(arg);
                if (p.type == Type::Bit)
                    coerce_to_bit(arg, "argument '" + p.name + "'");
                else
                    require_int(arg, "argument '" + p.name + "'");
            }
            if (current_fn_) calls_[current_fn_].insert(fn);
            e.type = fn->return_type;
            return;
        }
        }
    }

    void check_binary(Expr& e) {
        check_expr(*e.a);
        check_expr(*e.b);
        if (e.a->type == Type::Void || e.b->type == Type::Void)
            fail(e.loc, "operand cannot be void");
        const char* op = binop_spelling(e.bin_op);
        unify_bit_operands(*e.a, *e.b, op);
        bool bits = e.a->type == Type::Bit && e.b->type == Type::Bit;
        switch (e.bin_op) {
        case BinOp::LogOr:
        case BinOp::LogAnd:
        case BinOp::BitOr:
        case BinOp::BitXor:
        case BinOp::BitAnd:
            e.type = bits ? Type::Bit : Type::Int;
            return;
        case BinOp::Eq:
        case BinOp::Ne:
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge:
            // On bit operands the result is a bit; on int operands it is an
            // int 0/1 usable only in int contexts.
            e.type = bits ? Type::Bit : Type::Int;
            return;
        case BinOp::Shl:
        case BinOp::Shr:
        case BinOp::Add:
        case BinOp::Sub:
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod:
            if (bits)
                fail(e.loc, std::string("operator '") + op + "' requires int operands");
            require_int(*e.a, std::string("operand of '") + op + "'");
            require_int(*e.b, std::string("operand of '") + op + "'");
            e.type = Type::Int;
            return;
        }
    }
};

} // namespace

void typecheck(Ast& ast, ScopeTree& /*scopes*/) {
    Checker c(ast);
    c.run();
}

TypedAst analyze(const std::string& source, const std::string& filename) {
    TypedAst t;
    t.ast = std::make_unique<Ast>(parse_source(source, filename));
    t.scopes = build_scope_tree(*t.ast);
    typecheck(*t.ast, t.scopes);
    t.main = t.ast->find_function("main");
    return t;
}

int64_t const_eval(const Expr& e, const ConstEnv& env, const std::string& file) {
    auto fail = [&](const std::string& msg) -> int64_t {
        throw CompileError(file, e.loc, msg);
    };
    auto as_u = [](int64_t v) { return static_cast<uint64_t>(v); };

    switch (e.kind) {
    case ExprKind::IntLit:
        return static_cast<int64_t>(e.value);
    case ExprKind::VarRef: {
        if (e.decl->type != Type::Int)
            return fail("'" + e.name + "' is not an int variable");
        auto v = env.lookup ? env.lookup(e.decl, 0) : std::nullopt;
        if (!v) return fail("value of '" + e.name + "' is not known in this context");
        return *v;
    }
    case ExprKind::Index: {
        if (e.decl->type != Type::Int)
            return fail("'" + e.name + "' is not an int array");
        int64_t idx = const_eval(*e.a, env, file);
        if (idx < 0 || idx >= e.decl->length)
            return fail("index " + std::to_string(idx) + " out of bounds for '" + e.name +
                        "[" + std::to_string(e.decl->length) + "]'");
        auto v = env.lookup ? env.lookup(e.decl, idx) : std::nullopt;
        if (!v) return fail("value of '" + e.name + "' is not known in this context");
        return *v;
    }
    case ExprKind::Unary: {
        int64_t a = const_eval(*e.a, env, file);
        switch (e.un_op) {
        case UnOp::LogNot: return a == 0 ? 1 : 0;
        case UnOp::BitNot: return ~a;
        case UnOp::Neg: return static_cast<int64_t>(-as_u(a));
        }
        return 0;
    }
    case ExprKind::Binary: {
        int64_t a = const_eval(*e.a, env, file);
        int64_t b = const_eval(*e.b, env, file);
        switch (e.bin_op) {
        case BinOp::LogOr: return (a != 0 || b != 0) ? 1 : 0;
        case BinOp::LogAnd: return (a != 0 && b != 0) ? 1 : 0;
        case BinOp::BitOr: return a | b;
        case BinOp::BitXor: return a ^ b;
        case BinOp::BitAnd: return a & b;
        case BinOp::Eq: return a == b ? 1 : 0;
        case BinOp::Ne: return a != b ? 1 : 0;
        case BinOp::Lt: return a < b ? 1 : 0;
        case BinOp::Le: return a <= b ? 1 : 0;
        case BinOp::Gt: return a > b ? 1 : 0;
        case BinOp::Ge: return a >= b ? 1 : 0;
        case BinOp::Shl:
            if (b < 0 || b >= 64) return fail("shift amount " + std::to_string(b) + " out of range");
            return static_cast<int64_t>(as_u(a) << b);
        case BinOp::Shr:
            if (b < 0 || b >= 64) return fail("shift amount " + std::to_string(b) + " out of range");
            return static_cast<int64_t>(as_u(a) >> b);
        case BinOp::Add: return static_cast<int64_t>(as_u(a) + as_u(b));
        case BinOp::Sub: return static_cast<int64_t>(as_u(a) - as_u(b));
        case BinOp::Mul: return static_cast<int64_t>(as_u(a) * as_u(b));
        case BinOp::Div:
            if (b == 0) return fail("division by zero");
            if (b == -1) return static_cast<int64_t>(-as_u(a)); // INT64_MIN / -1 wraps
            return a / b;
        case BinOp::Mod:
            if (b == 0) return fail("modulo by zero");
            if (b == -1) return 0;
            return a % b;
        }
        return 0;
    }
    case ExprKind::Ternary:
        return const_eval(*e.a, env, file) != 0 ? const_eval(*e.b, env, file)
                                                : const_eval(*e.c, env, file);
    case ExprKind::Call: {
        if (!env.call) return fail("function call is not allowed in a constant expression");
        return env.call(e);
    }
    }
    return 0;
}

} // namespace bitblast
