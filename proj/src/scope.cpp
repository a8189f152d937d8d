#include "bitblast/scope.hpp"

#include <set>

namespace bitblast {

namespace {

class Resolver {
public:
    Resolver(Ast& ast, ScopeTree& tree) : ast_(ast), tree_(tree) {}

    void run() {
        Scope* root = tree_.root();
        std::set<std::string> function_names;
        for (const auto& fn : ast_.functions) {
            if (function_names.count(fn->name) || root->vars.count(fn->name))
                fail(fn->loc, "redeclaration of '" + fn->name + "'");
            function_names.insert(fn->name);
        }
        for (auto& g : ast_.globals) {
            if (root->vars.count(g->name) || function_names.count(g->name))
                fail(g->loc, "redeclaration of '" + g->name + "'");
            root->vars[g->name] = g.get();
        }
        // Initializers and array lengths of globals may reference other
        // globals (values are checked later, during elaboration).
        for (auto& g : ast_.globals) {
            if (g->length_expr) resolve_expr(*g->length_expr, root);
            if (g->init) resolve_expr(*g->init, root);
        }
        for (auto& fn : ast_.functions) resolve_function(*fn);
    }

private:
    Ast& ast_;
    ScopeTree& tree_;

    [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
        throw CompileError(ast_.file, loc, msg);
    }

    void resolve_function(FunctionDecl& fn) {
        Scope* fn_scope = tree_.make_child(tree_.root());
        for (auto& p : fn.params) {
            if (fn_scope->vars.count(p->name))
                fail(p->loc, "redeclaration of parameter '" + p->name + "'");
            if (p->length_expr) resolve_expr(*p->length_expr, tree_.root());
            fn_scope->vars[p->name] = p.get();
        }
        resolve_block(*fn.body, fn_scope);
    }

    void resolve_block(Stmt& block, Scope* parent) {
        Scope* scope = tree_.make_child(parent);
        block.scope = scope;
        for (auto& s : block.body) resolve_stmt(*s, scope);
    }

    void resolve_stmt(Stmt& s, Scope* scope) {
        switch (s.kind) {
        case StmtKind::Block:
            resolve_block(s, scope);
            return;
        case StmtKind::Decl:
            for (auto& d : s.decls) {
                if (d->length_expr) resolve_expr(*d->length_expr, scope);
                if (d->init) resolve_expr(*d->init, scope);
                if (scope->vars.count(d->name))
                    fail(d->loc, "redeclaration of '" + d->name + "' in the same scope");
                scope->vars[d->name] = d.get();
            }
            return;
        case StmtKind::ExprStmt:
            resolve_expr(*s.expr, scope);
            return;
        case StmtKind::Assign:
            resolve_expr(*s.lhs, scope);
            resolve_expr(*s.expr, scope);
            return;
        case StmtKind::If:
            resolve_expr(*s.expr, scope);
            resolve_stmt(*s.then_branch, scope);
            if (s.else_branch) resolve_stmt(*s.else_branch, scope);
            return;
        case StmtKind::For:
            resolve_stmt(*s.init_stmt, scope);
            resolve_expr(*s.expr, scope);
            resolve_stmt(*s.step_stmt, scope);
            resolve_stmt(*s.loop_body, scope);
            return;
        case StmtKind::Return:
            if (s.expr) resolve_expr(*s.expr, scope);
            return;
        }
    }

    void resolve_expr(Expr& e, Scope* scope) {
        switch (e.kind) {
        case ExprKind::IntLit:
            return;
        case ExprKind::VarRef:
        case ExprKind::Index: {
            const VarDecl* d = scope->lookup(e.name);
            if (!d) fail(e.loc, "use of undeclared identifier '" + e.name + "'");
            e.decl = d;
            if (e.kind == ExprKind::Index) resolve_expr(*e.a, scope);
            return;
        }
        case ExprKind::Unary:
            resolve_expr(*e.a, scope);
            return;
        case ExprKind::Binary:
            resolve_expr(*e.a, scope);
            resolve_expr(*e.b, scope);
            return;
        case ExprKind::Ternary:
            resolve_expr(*e.a, scope);
            resolve_expr(*e.b, scope);
            resolve_expr(*e.c, scope);
            return;
        case ExprKind::Call: {
            const FunctionDecl* fn = ast_.find_function(e.name);
            if (!fn) {
                if (scope->lookup(e.name))
                    fail(e.loc, "'" + e.name + "' is not a function");
                fail(e.loc, "call to undeclared function '" + e.name + "'");
            }
            e.callee = fn;
            for (auto& arg : e.args) resolve_expr(*arg, scope);
            return;
        }
        }
    }
};

} // namespace

ScopeTree build_scope_tree(Ast& ast) {
    ScopeTree tree;
    Resolver r(ast, tree);
    r.run();
    return tree;
}

} // namespace bitblast
