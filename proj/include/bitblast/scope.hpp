#pragma once

#include <deque>
#include <map>
#include <string>

#include "bitblast/ast.hpp"

namespace bitblast {

// Lexical scope node. Name lookup walks ancestor scopes; shadowing in nested
// blocks is allowed, redeclaration within one scope is not.
struct Scope {
    Scope* parent = nullptr;
    std::map<std::string, const VarDecl*> vars;

    const VarDecl* lookup(const std::string& name) const {
        for (const Scope* s = this; s; s = s->parent) {
            auto it = s->vars.find(name);
            if (it != s->vars.end()) return it->second;
        }
        return nullptr;
    }
};

class ScopeTree {
public:
    ScopeTree() { scopes_.emplace_back(); }

    Scope* root() { return &scopes_.front(); }
    const Scope* root() const { return &scopes_.front(); }

    Scope* make_child(Scope* parent) {
        scopes_.emplace_back();
        scopes_.back().parent = parent;
        return &scopes_.back();
    }

private:
    std::deque<Scope> scopes_; // stable addresses, also across moves
};

// Resolves every identifier use to its declaration (annotating Expr::decl and
// Expr::callee) and attaches a Scope to every block. All globals and all
// functions land in the root scope and are visible from any point of the
// program.
ScopeTree build_scope_tree(Ast& ast);

} // namespace bitblast
