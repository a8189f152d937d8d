#include "bitblast/interp.hpp"

#include <unordered_map>

namespace bitblast {

namespace {

constexpr uint64_t kStepBudget = uint64_t(1) << 28;

struct Slot {
    enum class Kind : uint8_t { UninitBit, UninitInt, Bit, Int } kind;
    int64_t value = 0;

    static Slot uninit(Type t) {
        return t == Type::Int ? Slot{Kind::UninitInt} : Slot{Kind::UninitBit};
    }
    static Slot bit(int v) { return {Kind::Bit, v}; }
    static Slot integer(int64_t v) { return {Kind::Int, v}; }
};

struct Frame {
    std::unordered_map<const VarDecl*, std::vector<Slot>> slots;
};

class Interp {
public:
    Interp(const TypedAst& prog, const ValueMap& inputs, InterpStats* stats)
        : prog_(prog), inputs_(inputs), stats_(stats) {}

    ValueMap run() {
        init_globals();
        stack_.emplace_back();
        exec_block(*prog_.main->body);
        stack_.pop_back();
        return collect_outputs();
    }

private:
    const TypedAst& prog_;
    const ValueMap& inputs_;
    InterpStats* stats_;
    Frame globals_;
    std::vector<Frame> stack_;
    uint64_t steps_ = 0;

    [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
        throw CompileError(prog_.ast->file, loc, msg);
    }

    void tick() {
        if (++steps_ > kStepBudget)
            throw ResourceLimitError("interpreter step budget exceeded");
    }

    std::vector<Slot>& cells_of(const VarDecl* d, SourceLoc loc) {
        if (!d->is_global) {
            auto it = stack_.back().slots.find(d);
            if (it != stack_.back().slots.end()) return it->second;
            fail(loc, "variable '" + d->name + "' is not live here");
        }
        auto it = globals_.slots.find(d);
        if (it != globals_.slots.end()) return it->second;
        fail(loc, "variable '" + d->name + "' is not live here");
    }

    Slot& slot_at(const VarDecl* d, int64_t index, SourceLoc loc) {
        auto& cells = cells_of(d, loc);
        if (index < 0 || index >= static_cast<int64_t>(cells.size()))
            fail(loc, "index " + std::to_string(index) + " out of bounds for '" + d->name +
                          "[" + std::to_string(d->length) + "]'");
        return cells[index];
    }

    int64_t value_of(const Slot& s, const Expr& at) {
        if (s.kind == Slot::Kind::UninitBit || s.kind == Slot::Kind::UninitInt)
            fail(at.loc, "variable '" + at.name + "' used before initialization");
        return s.value;
    }

    // Single evaluator for bit and int expressions; bit values are 0/1.
    int64_t eval(const Expr& e) {
        switch (e.kind) {
        case ExprKind::IntLit:
            return static_cast<int64_t>(e.value);
        case ExprKind::VarRef:
            return value_of(slot_at(e.decl, 0, e.loc), e);
        case ExprKind::Index:
            return value_of(slot_at(e.decl, eval(*e.a), e.loc), e);
        case ExprKind::Unary: {
            int64_t a = eval(*e.a);
            switch (e.un_op) {
            case UnOp::LogNot: return a == 0 ? 1 : 0;
            case UnOp::BitNot: return e.type == Type::Bit ? (a ^ 1) : ~a;
            case UnOp::Neg: return static_cast<int64_t>(-static_cast<uint64_t>(a));
            }
            return 0;
        }
        case ExprKind::Binary:
            return eval_binary(e);
        case ExprKind::Ternary:
            return eval(*e.a) != 0 ? eval(*e.b) : eval(*e.c);
        case ExprKind::Call:
            return call(e);
        }
        fail(e.loc, "unexpected expression");
    }

    int64_t eval_binary(const Expr& e) {
        int64_t a = eval(*e.a);
        int64_t b = eval(*e.b);
        auto u = [](int64_t v) { return static_cast<uint64_t>(v); };
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
            if (b < 0 || b >= 64) fail(e.loc, "shift amount out of range");
            return static_cast<int64_t>(u(a) << b);
        case BinOp::Shr:
            if (b < 0 || b >= 64) fail(e.loc, "shift amount out of range");
            return static_cast<int64_t>(u(a) >> b);
        case BinOp::Add: return static_cast<int64_t>(u(a) + u(b));
        case BinOp::Sub: return static_cast<int64_t>(u(a) - u(b));
        case BinOp::Mul: return static_cast<int64_t>(u(a) * u(b));
        case BinOp::Div:
            if (b == 0) fail(e.loc, "division by zero");
            if (b == -1) return static_cast<int64_t>(-u(a)); // INT64_MIN / -1 wraps
            return a / b;
        case BinOp::Mod:
            if (b == 0) fail(e.loc, "modulo by zero");
            if (b == -1) return 0;
            return a % b;
        }
        return 0;
    }

    int64_t call(const Expr& e) {
        const FunctionDecl* fn = e.callee;
        std::vector<std::vector<Slot>> args;
        args.reserve(fn->params.size());
        for (size_t i = 0; i < fn->params.size(); ++i) {
            const VarDecl& p = *fn->params[i];
            const Expr& arg = *e.args[i];
            if (p.is_array) {
                args.push_back(cells_of(arg.decl, arg.loc));
            } else if (p.type == Type::Int) {
                args.push_back({Slot::integer(eval(arg))});
            } else {
                args.push_back({Slot::bit(static_cast<int>(eval(arg)))});
            }
        }
        Frame frame;
        for (size_t i = 0; i < fn->params.size(); ++i)
            frame.slots.emplace(fn->params[i].get(), std::move(args[i]));
        stack_.push_back(std::move(frame));

        int64_t result = 0;
        const auto& body = fn->body->body;
        for (size_t i = 0; i < body.size(); ++i) {
            const Stmt& st = *body[i];
            if (st.kind == StmtKind::Return) {
                if (st.expr) result = eval(*st.expr);
                break;
            }
            exec_stmt(st);
        }
        stack_.pop_back();
        return result;
    }

    void exec_block(const Stmt& block) {
        for (const auto& s : block.body) exec_stmt(*s);
    }

    void exec_stmt(const Stmt& s) {
        tick();
        switch (s.kind) {
        case StmtKind::Block:
            exec_block(s);
            return;
        case StmtKind::Decl:
            for (const auto& d : s.decls) {
                std::vector<Slot> cells;
                if (d->init) {
                    int64_t v = eval(*d->init);
                    cells.push_back(d->type == Type::Int ? Slot::integer(v)
                                                         : Slot::bit(static_cast<int>(v)));
                } else {
                    for (int64_t i = 0; i < d->length; ++i)
                        cells.push_back(Slot::uninit(d->type));
                }
                stack_.back().slots[d.get()] = std::move(cells);
            }
            return;
        case StmtKind::ExprStmt:
            eval(*s.expr);
            return;
        case StmtKind::Assign:
            exec_assign(s);
            return;
        case StmtKind::If:
            if (eval(*s.expr) != 0)
                exec_stmt(*s.then_branch);
            else if (s.else_branch)
                exec_stmt(*s.else_branch);
            return;
        case StmtKind::For: {
            exec_stmt(*s.init_stmt);
            int64_t trips = 0;
            while (eval(*s.expr) != 0) {
                ++trips;
                exec_stmt(*s.loop_body);
                exec_stmt(*s.step_stmt);
            }
            if (stats_) stats_->loop_trip_counts[&s].insert(trips);
            return;
        }
        case StmtKind::Return:
            return; // only reachable in main (void, final statement)
        }
    }

    void exec_assign(const Stmt& s) {
        const Expr& lhs = *s.lhs;
        int64_t index = lhs.kind == ExprKind::Index ? eval(*lhs.a) : 0;
        int64_t rhs = eval(*s.expr);
        Slot& slot = slot_at(lhs.decl, index, lhs.loc);
        int64_t old = 0;
        if (s.assign_op != AssignOp::Set) old = value_of(slot, lhs);
        auto u = [](int64_t v) { return static_cast<uint64_t>(v); };
        int64_t value = rhs;
        switch (s.assign_op) {
        case AssignOp::Set: break;
        case AssignOp::Xor: value = old ^ rhs; break;
        case AssignOp::And: value = old & rhs; break;
        case AssignOp::Or: value = old | rhs; break;
        case AssignOp::Add: value = static_cast<int64_t>(u(old) + u(rhs)); break;
        case AssignOp::Sub: value = static_cast<int64_t>(u(old) - u(rhs)); break;
        }
        slot = lhs.type == Type::Int ? Slot::integer(value)
                                     : Slot::bit(static_cast<int>(value & 1));
    }

    void init_globals() {
        for (const auto& g : prog_.ast->globals) {
            std::vector<Slot> cells;
            if (g->attr == Attribute::In) {
                const std::vector<uint8_t>* bits = inputs_.find(g->name);
                if (!bits)
                    fail(g->loc, "no input value provided for '" + g->name + "'");
                if (static_cast<int64_t>(bits->size()) != g->length)
                    fail(g->loc, "input '" + g->name + "' is " +
                                     std::to_string(bits->size()) + " bit(s), expected " +
                                     std::to_string(g->length));
                for (uint8_t b : *bits) cells.push_back(Slot::bit(b & 1));
            } else if (g->init) {
                int64_t v = eval(*g->init);
                cells.push_back(g->type == Type::Int ? Slot::integer(v)
                                                     : Slot::bit(static_cast<int>(v & 1)));
            } else if (g->type == Type::Int) {
                for (int64_t i = 0; i < g->length; ++i) cells.push_back(Slot::uninit(Type::Int));
            } else {
                for (int64_t i = 0; i < g->length; ++i) cells.push_back(Slot::bit(0));
            }
            globals_.slots[g.get()] = std::move(cells);
        }
    }

    ValueMap collect_outputs() {
        ValueMap out;
        for (const auto& g : prog_.ast->globals) {
            if (g->attr != Attribute::Out) continue;
            const auto& cells = globals_.slots[g.get()];
            std::vector<uint8_t> bits;
            bits.reserve(cells.size());
            for (const Slot& s : cells)
                bits.push_back(static_cast<uint8_t>(s.kind == Slot::Kind::Bit ? s.value & 1 : 0));
            out.entries.emplace_back(g->name, std::move(bits));
        }
        return out;
    }
};

} // namespace

ValueMap interpret(const TypedAst& prog, const ValueMap& inputs, InterpStats* stats) {
    Interp in(prog, inputs, stats);
    return in.run();
}

} // namespace bitblast
