#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "bitblast/ast.hpp"
#include "bitblast/scope.hpp"

namespace bitblast {

// Fully analyzed program: parsed, resolved and type-annotated, with array
// lengths evaluated. Owns the AST and its scope tree.
struct TypedAst {
    std::unique_ptr<Ast> ast;
    ScopeTree scopes;
    const FunctionDecl* main = nullptr;
};

// Type-checks a resolved AST in place and resolves array lengths. Throws
// CompileError on the first violation. Checks, among other things:
//   - bit/int separation (no bit->int conversion; only the literals 0 and 1
//     convert to bit),
//   - __in/__out restricted to global bit variables, no initializer on __in,
//   - array indices and loop bounds are int-typed,
//   - the call graph is acyclic,
//   - non-void functions return exactly once, as the final statement.
void typecheck(Ast& ast, ScopeTree& scopes);

// tokenize + parse + build_scope_tree + typecheck.
TypedAst analyze(const std::string& source, const std::string& filename = "<input>");

// Environment callbacks for evaluating int expressions at translation time.
struct ConstEnv {
    // Returns the current value of an int variable element, or nullopt if it
    // is unknown in this context (which is an error at the use site).
    std::function<std::optional<int64_t>(const VarDecl*, int64_t index)> lookup;
    // Executes a call to an int-returning function, or null if calls are not
    // allowed in this context.
    std::function<int64_t(const Expr& call)> call;
};

// Evaluates an int-typed expression to a concrete 64-bit value. Two's
// complement with wrapping overflow; division/modulo by zero and shifts by
// amounts outside [0, 63] are errors.
int64_t const_eval(const Expr& e, const ConstEnv& env, const std::string& file);

} // namespace bitblast
