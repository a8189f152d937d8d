#include "bitblast/ast.hpp"

#include <sstream>

namespace bitblast {

const char* type_name(Type t) {
    switch (t) {
    case Type::Bit: return "bit";
    case Type::Int: return "int";
    case Type::Void: return "void";
    }
    return "?";
}

const char* binop_spelling(BinOp op) {
    switch (op) {
    case BinOp::LogOr: return "||";
    case BinOp::LogAnd: return "&&";
    case BinOp::BitOr: return "|";
    case BinOp::BitXor: return "^";
    case BinOp::BitAnd: return "&";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Shl: return "<<";
    case BinOp::Shr: return ">>";
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    }
    return "?";
}

namespace {

const char* unop_spelling(UnOp op) {
    switch (op) {
    case UnOp::LogNot: return "!";
    case UnOp::BitNot: return "~";
    case UnOp::Neg: return "-";
    }
    return "?";
}

const char* assignop_spelling(AssignOp op) {
    switch (op) {
    case AssignOp::Set: return "=";
    case AssignOp::Xor: return "^=";
    case AssignOp::And: return "&=";
    case AssignOp::Or: return "|=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    }
    return "?";
}

class Printer {
public:
    std::string take() { return out_.str(); }

    std::string render(const Ast& ast) {
        for (size_t gi = 0, fi = 0; gi < ast.globals.size() || fi < ast.functions.size();) {
            // Globals and functions are stored separately; emit globals first,
            // then functions. Relative order within each list is preserved.
            if (gi < ast.globals.size()) {
                print_global(*ast.globals[gi++]);
            } else {
                print_function(*ast.functions[fi++]);
            }
        }
        return out_.str();
    }

    void expr(const Expr& e, int parent_prec = 0) {
        switch (e.kind) {
        case ExprKind::IntLit:
            out_ << e.value;
            return;
        case ExprKind::VarRef:
            out_ << e.name;
            return;
        case ExprKind::Index:
            out_ << e.name << "[";
            expr(*e.a);
            out_ << "]";
            return;
        case ExprKind::Unary:
            out_ << unop_spelling(e.un_op);
            expr(*e.a, 13);
            return;
        case ExprKind::Binary: {
            int prec = binop_prec(e.bin_op);
            if (prec < parent_prec) out_ << "(";
            expr(*e.a, prec);
            out_ << " " << binop_spelling(e.bin_op) << " ";
            expr(*e.b, prec + 1);
            if (prec < parent_prec) out_ << ")";
            return;
        }
        case ExprKind::Ternary:
            if (parent_prec > 1) out_ << "(";
            expr(*e.a, 2);
            out_ << " ? ";
            expr(*e.b, 0);
            out_ << " : ";
            expr(*e.c, 1);
            if (parent_prec > 1) out_ << ")";
            return;
        case ExprKind::Call:
            out_ << e.name << "(";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) out_ << ", ";
                expr(*e.args[i]);
            }
            out_ << ")";
            return;
        }
    }

private:
    std::ostringstream out_;
    int indent_ = 0;

    static int binop_prec(BinOp op) {
        switch (op) {
        case BinOp::LogOr: return 2;
        case BinOp::LogAnd: return 3;
        case BinOp::BitOr: return 4;
        case BinOp::BitXor: return 5;
        case BinOp::BitAnd: return 6;
        case BinOp::Eq:
        case BinOp::Ne: return 7;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: return 8;
        case BinOp::Shl:
        case BinOp::Shr: return 9;
        case BinOp::Add:
        case BinOp::Sub: return 10;
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod: return 11;
        }
        return 0;
    }

    void line_start() {
        for (int i = 0; i < indent_; ++i) out_ << "    ";
    }

    void print_declarator(const VarDecl& d) {
        out_ << d.name;
        if (d.is_array) {
            out_ << "[";
            expr(*d.length_expr);
            out_ << "]";
        }
        if (d.init) {
            out_ << " = ";
            expr(*d.init);
        }
    }

    void print_global(const VarDecl& d) {
        if (d.attr == Attribute::In) out_ << "__in ";
        if (d.attr == Attribute::Out) out_ << "__out ";
        out_ << type_name(d.type) << " ";
        print_declarator(d);
        out_ << ";\n";
    }

    void print_function(const FunctionDecl& f) {
        out_ << type_name(f.return_type) << " " << f.name << "(";
        for (size_t i = 0; i < f.params.size(); ++i) {
            if (i) out_ << ", ";
            const VarDecl& p = *f.params[i];
            out_ << type_name(p.type) << " " << p.name;
            if (p.is_array) {
                out_ << "[";
                expr(*p.length_expr);
                out_ << "]";
            }
        }
        out_ << ")\n";
        stmt(*f.body);
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
        case StmtKind::Block:
            line_start();
            out_ << "{\n";
            ++indent_;
            for (const auto& child : s.body) stmt(*child);
            --indent_;
            line_start();
            out_ << "}\n";
            return;
        case StmtKind::Decl:
            line_start();
            out_ << type_name(s.decls.front()->type) << " ";
            for (size_t i = 0; i < s.decls.size(); ++i) {
                if (i) out_ << ", ";
                print_declarator(*s.decls[i]);
            }
            out_ << ";\n";
            return;
        case StmtKind::ExprStmt:
            line_start();
            expr(*s.expr);
            out_ << ";\n";
            return;
        case StmtKind::Assign:
            line_start();
            print_assign(s);
            out_ << ";\n";
            return;
        case StmtKind::If:
            line_start();
            out_ << "if (";
            expr(*s.expr);
            out_ << ")\n";
            print_branch(*s.then_branch);
            if (s.else_branch) {
                line_start();
                out_ << "else\n";
                print_branch(*s.else_branch);
            }
            return;
        case StmtKind::For:
            line_start();
            out_ << "for (";
            print_assign(*s.init_stmt);
            out_ << "; ";
            expr(*s.expr);
            out_ << "; ";
            print_assign(*s.step_stmt);
            out_ << ")\n";
            print_branch(*s.loop_body);
            return;
        case StmtKind::Return:
            line_start();
            out_ << "return";
            if (s.expr) {
                out_ << " ";
                expr(*s.expr);
            }
            out_ << ";\n";
            return;
        }
    }

    // Non-block branch bodies get an extra indent level.
    void print_branch(const Stmt& s) {
        if (s.kind == StmtKind::Block) {
            stmt(s);
        } else {
            ++indent_;
            stmt(s);
            --indent_;
        }
    }

    void print_assign(const Stmt& s) {
        expr(*s.lhs);
        out_ << " " << assignop_spelling(s.assign_op) << " ";
        expr(*s.expr);
    }
};

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case ExprKind::IntLit:
        return a.value == b.value;
    case ExprKind::VarRef:
        return a.name == b.name;
    case ExprKind::Index:
        return a.name == b.name && expr_equal(*a.a, *b.a);
    case ExprKind::Unary:
        return a.un_op == b.un_op && expr_equal(*a.a, *b.a);
    case ExprKind::Binary:
        return a.bin_op == b.bin_op && expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b);
    case ExprKind::Ternary:
        return expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b) && expr_equal(*a.c, *b.c);
    case ExprKind::Call: {
        if (a.name != b.name || a.args.size() != b.args.size()) return false;
        for (size_t i = 0; i < a.args.size(); ++i)
            if (!expr_equal(*a.args[i], *b.args[i])) return false;
        return true;
    }
    }
    return false;
}

bool decl_equal(const VarDecl& a, const VarDecl& b) {
    if (a.name != b.name || a.type != b.type || a.is_array != b.is_array ||
        a.attr != b.attr)
        return false;
    if (a.is_array && !expr_equal(*a.length_expr, *b.length_expr)) return false;
    if ((a.init == nullptr) != (b.init == nullptr)) return false;
    if (a.init && !expr_equal(*a.init, *b.init)) return false;
    return true;
}

bool stmt_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case StmtKind::Block: {
        if (a.body.size() != b.body.size()) return false;
        for (size_t i = 0; i < a.body.size(); ++i)
            if (!stmt_equal(*a.body[i], *b.body[i])) return false;
        return true;
    }
    case StmtKind::Decl: {
        if (a.decls.size() != b.decls.size()) return false;
        for (size_t i = 0; i < a.decls.size(); ++i)
            if (!decl_equal(*a.decls[i], *b.decls[i])) return false;
        return true;
    }
    case StmtKind::ExprStmt:
        return expr_equal(*a.expr, *b.expr);
    case StmtKind::Assign:
        return a.assign_op == b.assign_op && expr_equal(*a.lhs, *b.lhs) &&
               expr_equal(*a.expr, *b.expr);
    case StmtKind::If:
        if (!expr_equal(*a.expr, *b.expr)) return false;
        if (!stmt_equal(*a.then_branch, *b.then_branch)) return false;
        if ((a.else_branch == nullptr) != (b.else_branch == nullptr)) return false;
        return !a.else_branch || stmt_equal(*a.else_branch, *b.else_branch);
    case StmtKind::For:
        return stmt_equal(*a.init_stmt, *b.init_stmt) && expr_equal(*a.expr, *b.expr) &&
               stmt_equal(*a.step_stmt, *b.step_stmt) && stmt_equal(*a.loop_body, *b.loop_body);
    case StmtKind::Return:
        if ((a.expr == nullptr) != (b.expr == nullptr)) return false;
        return !a.expr || expr_equal(*a.expr, *b.expr);
    }
    return false;
}

} // namespace

std::string pretty_print(const Ast& ast) {
    Printer p;
    return p.render(ast);
}

std::string pretty_print(const Expr& e) {
    Printer p;
    p.expr(e);
    return p.take();
}

bool struct_equal(const Ast& a, const Ast& b) {
    if (a.globals.size() != b.globals.size() || a.functions.size() != b.functions.size())
        return false;
    for (size_t i = 0; i < a.globals.size(); ++i)
        if (!decl_equal(*a.globals[i], *b.globals[i])) return false;
    for (size_t i = 0; i < a.functions.size(); ++i) {
        const FunctionDecl& fa = *a.functions[i];
        const FunctionDecl& fb = *b.functions[i];
        if (fa.name != fb.name || fa.return_type != fb.return_type ||
            fa.params.size() != fb.params.size())
            return false;
        for (size_t p = 0; p < fa.params.size(); ++p)
            if (!decl_equal(*fa.params[p], *fb.params[p])) return false;
        if (!stmt_equal(*fa.body, *fb.body)) return false;
    }
    return true;
}

} // namespace bitblast
