#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bitblast/diag.hpp"

namespace bitblast {

enum class Type : uint8_t { Bit, Int, Void };

const char* type_name(Type t);

enum class Attribute : uint8_t { None, In, Out };

enum class UnOp : uint8_t { LogNot, BitNot, Neg };
enum class BinOp : uint8_t {
    LogOr, LogAnd, BitOr, BitXor, BitAnd,
    Eq, Ne, Lt, Le, Gt, Ge,
    Shl, Shr, Add, Sub, Mul, Div, Mod,
};

const char* binop_spelling(BinOp op);

struct VarDecl;
struct FunctionDecl;

enum class ExprKind : uint8_t { IntLit, VarRef, Index, Unary, Binary, Ternary, Call };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    ExprKind kind;
    SourceLoc loc;

    uint64_t value = 0;   // IntLit
    std::string name;     // VarRef, Index, Call
    UnOp un_op{};
    BinOp bin_op{};
    ExprPtr a, b, c;      // Unary: a; Binary: a,b; Index: a; Ternary: a,b,c
    std::vector<ExprPtr> args; // Call

    // filled by resolution / typecheck
    const VarDecl* decl = nullptr;
    const FunctionDecl* callee = nullptr;
    Type type = Type::Void;
};

struct VarDecl {
    std::string name;
    Type type = Type::Bit;
    bool is_array = false;
    ExprPtr length_expr;  // null for scalars
    Attribute attr = Attribute::None;
    ExprPtr init;
    SourceLoc loc;
    bool is_global = false;
    bool is_param = false;

    int64_t length = 1;   // resolved array length (1 for scalars)
};

enum class StmtKind : uint8_t { Block, Decl, ExprStmt, Assign, If, For, Return };
enum class AssignOp : uint8_t { Set, Xor, And, Or, Add, Sub };

struct Scope;
struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
    StmtKind kind;
    SourceLoc loc;

    std::vector<StmtPtr> body;                     // Block
    std::vector<std::unique_ptr<VarDecl>> decls;   // Decl
    ExprPtr expr;        // ExprStmt / If cond / For cond / Return value / Assign rhs
    ExprPtr lhs;         // Assign target (VarRef or Index)
    AssignOp assign_op = AssignOp::Set;
    StmtPtr then_branch, else_branch;              // If
    StmtPtr init_stmt, step_stmt, loop_body;       // For

    Scope* scope = nullptr; // Block: scope introduced by this block
};

struct FunctionDecl {
    std::string name;
    Type return_type = Type::Void;
    std::vector<std::unique_ptr<VarDecl>> params;
    StmtPtr body; // Block
    SourceLoc loc;
};

struct Ast {
    std::string file = "<input>";
    std::vector<std::unique_ptr<VarDecl>> globals;     // declaration order
    std::vector<std::unique_ptr<FunctionDecl>> functions;

    const FunctionDecl* find_function(const std::string& name) const {
        for (const auto& f : functions)
            if (f->name == name) return f.get();
        return nullptr;
    }
};

// Canonical source rendering of the AST. Re-parsing the output yields a
// structurally identical tree.
std::string pretty_print(const Ast& ast);
std::string pretty_print(const Expr& e);

// Structural equality, ignoring source locations and annotations.
bool struct_equal(const Ast& a, const Ast& b);

} // namespace bitblast
