#include "bitblast/symbex.hpp"

#include <unordered_map>
#include <utility>
#include <vector>

namespace bitblast {

namespace {

struct Cell {
    enum class Kind : uint8_t { UninitBit, UninitInt, Bit, Int } kind;
    NodeId bit = 0;
    int64_t num = 0;

    static Cell uninit(Type t) {
        return t == Type::Int ? Cell{Kind::UninitInt} : Cell{Kind::UninitBit};
    }
    static Cell of_bit(NodeId f) { return {Kind::Bit, f, 0}; }
    static Cell of_int(int64_t v) { return {Kind::Int, 0, v}; }
};

// One storage frame: globals or one function activation. Declarations keep
// registration order so state merges iterate deterministically.
struct Frame {
    std::vector<const VarDecl*> order;
    std::unordered_map<const VarDecl*, std::vector<Cell>> slots;

    std::vector<Cell>* find(const VarDecl* d) {
        auto it = slots.find(d);
        return it == slots.end() ? nullptr : &it->second;
    }
    void declare(const VarDecl* d, std::vector<Cell> cells) {
        auto [it, inserted] = slots.try_emplace(d, std::move(cells));
        if (!inserted)
            it->second = std::move(cells); // re-entered scope (loop iteration)
        else
            order.push_back(d);
    }
};

struct State {
    Frame globals;
    std::vector<Frame> stack;
};

class Executor {
public:
    Executor(const TypedAst& prog, const SymbexOptions& opts, SymbexStats* stats)
        : prog_(prog), opts_(opts), stats_(stats) {}

    PropositionalEncoding run() {
        init_globals();
        state_.stack.emplace_back();
        exec_block(*prog_.main->body);
        state_.stack.pop_back();
        finalize_outputs();
        return std::move(enc_);
    }

private:
    const TypedAst& prog_;
    const SymbexOptions& opts_;
    SymbexStats* stats_;
    PropositionalEncoding enc_;
    State state_;
    uint64_t steps_ = 0;

    const std::string& file() const { return prog_.ast->file; }

    [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
        throw CompileError(file(), loc, msg);
    }

    void tick(const Stmt& s) {
        ++steps_;
        if (stats_) ++stats_->statements_executed;
        if (steps_ > opts_.max_steps)
            throw ResourceLimitError("unroll budget exceeded (" +
                                     std::to_string(opts_.max_steps) + " statements)");
        (void)s;
    }

    // --- storage ------------------------------------------------------------

    std::vector<Cell>& cells_of(const VarDecl* d, SourceLoc loc) {
        if (!d->is_global) {
            if (auto* c = state_.stack.back().find(d)) return *c;
            // Declared in a block not yet executed on this path.
            fail(loc, "variable '" + d->name + "' is not live here");
        }
        if (auto* c = state_.globals.find(d)) return *c;
        fail(loc, "variable '" + d->name + "' is not live here");
    }

    Cell& cell_at(const Expr& ref, int64_t index) {
        auto& cells = cells_of(ref.decl, ref.loc);
        if (index < 0 || index >= static_cast<int64_t>(cells.size()))
            fail(ref.loc, "index " + std::to_string(index) + " out of bounds for '" +
                              ref.decl->name + "[" + std::to_string(ref.decl->length) + "]'");
        return cells[index];
    }

    // --- int evaluation -------------------------------------------------------

    ConstEnv make_env() {
        ConstEnv env;
        env.lookup = [this](const VarDecl* d, int64_t idx) -> std::optional<int64_t> {
            auto* cells = d->is_global ? state_.globals.find(d) : state_.stack.back().find(d);
            if (!cells || idx < 0 || idx >= static_cast<int64_t>(cells->size()))
                return std::nullopt;
            const Cell& c = (*cells)[idx];
            if (c.kind == Cell::Kind::UninitInt)
                throw CompileError(file(), d->loc,
                                   "int variable '" + d->name + "' used before initialization");
            if (c.kind != Cell::Kind::Int) return std::nullopt;
            return c.num;
        };
        env.call = [this](const Expr& call) -> int64_t {
            Cell r = exec_call(call);
            if (r.kind != Cell::Kind::Int)
                fail(call.loc, "call does not produce an int value");
            return r.num;
        };
        return env;
    }

    int64_t int_eval(const Expr& e) { return const_eval(e, make_env(), file()); }

    // --- bit translation ------------------------------------------------------

    NodeId translate_expr(const Expr& e) {
        FormulaArena& f = enc_.arena;
        switch (e.kind) {
        case ExprKind::IntLit:
            return f.constant(e.value != 0);
        case ExprKind::VarRef: {
            const Cell& c = cell_at(e, 0);
            if (c.kind == Cell::Kind::UninitBit)
                fail(e.loc, "bit variable '" + e.name + "' used before initialization");
            return c.bit;
        }
        case ExprKind::Index: {
            int64_t idx = int_eval(*e.a);
            const Cell& c = cell_at(e, idx);
            if (c.kind == Cell::Kind::UninitBit)
                fail(e.loc, "bit variable '" + e.name + "[" + std::to_string(idx) +
                                "]' used before initialization");
            return c.bit;
        }
        case ExprKind::Unary:
            // LogNot and BitNot coincide on bits; Neg is rejected earlier.
            return f.mk_not(translate_expr(*e.a));
        case ExprKind::Binary: {
            NodeId a = translate_expr(*e.a);
            NodeId b = translate_expr(*e.b);
            switch (e.bin_op) {
            case BinOp::LogAnd:
            case BinOp::BitAnd: return f.mk_and(a, b);
            case BinOp::LogOr:
            case BinOp::BitOr: return f.mk_or(a, b);
            case BinOp::BitXor: return f.mk_xor(a, b);
            case BinOp::Eq: return f.mk_equiv(a, b);
            case BinOp::Ne: return f.mk_xor(a, b);
            case BinOp::Lt: return f.mk_and(f.mk_not(a), b);
            case BinOp::Le: return f.mk_or(f.mk_not(a), b);
            case BinOp::Gt: return f.mk_and(a, f.mk_not(b));
            case BinOp::Ge: return f.mk_or(a, f.mk_not(b));
            default:
                fail(e.loc, "operator not defined on bits");
            }
        }
        case ExprKind::Ternary: {
            if (e.a->type == Type::Int)
                return int_eval(*e.a) != 0 ? translate_expr(*e.b) : translate_expr(*e.c);
            NodeId c = translate_expr(*e.a);
            if (f.is_true(c)) return translate_expr(*e.b);
            if (f.is_false(c)) return translate_expr(*e.c);
            return f.mk_ite(c, translate_expr(*e.b), translate_expr(*e.c));
        }
        case ExprKind::Call: {
            Cell r = exec_call(e);
            if (r.kind != Cell::Kind::Bit)
                fail(e.loc, "call does not produce a bit value");
            return r.bit;
        }
        }
        fail(e.loc, "unexpected expression");
    }

    // --- assignment -----------------------------------------------------------

    // Copy propagation: a variable or constant right-hand side only rebinds;
    // a compound formula gets a fresh definition variable (unless forwarding).
    void bind_location(const VarDecl* d, int64_t index, NodeId rhs, SourceLoc loc) {
        Cell& c = cell_at_decl(d, index, loc);
        FormulaArena& f = enc_.arena;
        if (opts_.forward || f.is_leaf(rhs)) {
            c = Cell::of_bit(rhs);
            return;
        }
        uint32_t v = enc_.new_var(VarOrigin::Aux,
                                  VarLabel{d->name, d->is_array ? index : -1,
                                           static_cast<int64_t>(enc_.definitions.size())});
        enc_.add_definition(v, rhs);
        if (enc_.definitions.size() > opts_.max_definitions)
            throw ResourceLimitError("definition budget exceeded (" +
                                     std::to_string(opts_.max_definitions) + ")");
        c = Cell::of_bit(f.var(v));
    }

    Cell& cell_at_decl(const VarDecl* d, int64_t index, SourceLoc loc) {
        auto& cells = cells_of(d, loc);
        if (index < 0 || index >= static_cast<int64_t>(cells.size()))
            fail(loc, "index " + std::to_string(index) + " out of bounds for '" + d->name +
                          "[" + std::to_string(d->length) + "]'");
        return cells[index];
    }

    void exec_assign(const Stmt& s) {
        const Expr& lhs = *s.lhs;
        int64_t index = 0;
        if (lhs.kind == ExprKind::Index) index = int_eval(*lhs.a);

        if (lhs.type == Type::Int) {
            int64_t rhs = int_eval(*s.expr);
            Cell& c = cell_at_decl(lhs.decl, index, lhs.loc);
            int64_t old = 0;
            if (s.assign_op != AssignOp::Set) {
                if (c.kind != Cell::Kind::Int)
                    fail(lhs.loc, "int variable '" + lhs.name + "' used before initialization");
                old = c.num;
            }
            auto u = [](int64_t v) { return static_cast<uint64_t>(v); };
            int64_t value = rhs;
            switch (s.assign_op) {
            case AssignOp::Set: value = rhs; break;
            case AssignOp::Xor: value = old ^ rhs; break;
            case AssignOp::And: value = old & rhs; break;
            case AssignOp::Or: value = old | rhs; break;
            case AssignOp::Add: value = static_cast<int64_t>(u(old) + u(rhs)); break;
            case AssignOp::Sub: value = static_cast<int64_t>(u(old) - u(rhs)); break;
            }
            c = Cell::of_int(value);
            return;
        }

        NodeId rhs = translate_expr(*s.expr);
        if (s.assign_op != AssignOp::Set) {
            Cell& c = cell_at_decl(lhs.decl, index, lhs.loc);
            if (c.kind != Cell::Kind::Bit)
                fail(lhs.loc, "bit variable '" + lhs.name + "' used before initialization");
            FormulaArena& f = enc_.arena;
            switch (s.assign_op) {
            case AssignOp::Xor: rhs = f.mk_xor(c.bit, rhs); break;
            case AssignOp::And: rhs = f.mk_and(c.bit, rhs); break;
            case AssignOp::Or: rhs = f.mk_or(c.bit, rhs); break;
            default: fail(s.loc, "'+='/'-=' require an int left side");
            }
        }
        bind_location(lhs.decl, index, rhs, lhs.loc);
    }

    // --- statements -----------------------------------------------------------

    void exec_block(const Stmt& block) {
        for (const auto& s : block.body) exec_stmt(*s);
    }

    void exec_stmt(const Stmt& s) {
        tick(s);
        switch (s.kind) {
        case StmtKind::Block:
            exec_block(s);
            return;
        case StmtKind::Decl:
            for (const auto& d : s.decls) declare_local(*d);
            return;
        case StmtKind::ExprStmt:
            if (s.expr->kind == ExprKind::Call) {
                exec_call(*s.expr);
            } else if (s.expr->type == Type::Int) {
                int_eval(*s.expr);
            } else {
                translate_expr(*s.expr);
            }
            return;
        case StmtKind::Assign:
            exec_assign(s);
            return;
        case StmtKind::If:
            exec_if(s);
            return;
        case StmtKind::For:
            exec_for(s);
            return;
        case StmtKind::Return:
            // Handled by exec_call; a bare return in main is a no-op.
            return;
        }
    }

    void declare_local(const VarDecl& d) {
        std::vector<Cell> cells;
        cells.reserve(static_cast<size_t>(d.length));
        if (d.init) {
            if (d.type == Type::Int)
                cells.push_back(Cell::of_int(int_eval(*d.init)));
            else
                cells.push_back(Cell::of_bit(translate_expr(*d.init)));
        } else {
            for (int64_t i = 0; i < d.length; ++i) cells.push_back(Cell::uninit(d.type));
        }
        state_.stack.back().declare(&d, std::move(cells));
    }

    void exec_if(const Stmt& s) {
        if (s.expr->type == Type::Int) {
            // Conditions over service data are decided at translation time.
            if (int_eval(*s.expr) != 0)
                exec_stmt(*s.then_branch);
            else if (s.else_branch)
                exec_stmt(*s.else_branch);
            return;
        }
        NodeId cond = translate_expr(*s.expr);
        if (enc_.arena.is_const(cond)) {
            if (enc_.arena.is_true(cond))
                exec_stmt(*s.then_branch);
            else if (s.else_branch)
                exec_stmt(*s.else_branch);
            return;
        }

        State base = state_;
        exec_stmt(*s.then_branch);
        State then_state = std::move(state_);
        state_ = std::move(base);
        State base_copy = state_; // branch values for locations the else leaves alone
        if (s.else_branch) exec_stmt(*s.else_branch);
        State else_state = std::move(state_);
        state_ = std::move(base_copy);

        merge_states(cond, then_state, else_state, s.loc);
    }

    // For every location whose binding differs between the branches, bind a
    // fresh definition x' == ite(cond, then_value, else_value). Locations
    // untouched by both branches keep their binding with no allocation.
    void merge_states(NodeId cond, State& then_state, State& else_state, SourceLoc loc) {
        merge_frame(cond, state_.globals, then_state.globals, else_state.globals, loc);
        for (size_t i = 0; i < state_.stack.size(); ++i)
            merge_frame(cond, state_.stack[i], then_state.stack[i], else_state.stack[i], loc);
    }

    void merge_frame(NodeId cond, Frame& base, Frame& then_f, Frame& else_f, SourceLoc loc) {
        for (const VarDecl* d : base.order) {
            auto& base_cells = *base.find(d);
            auto* t_cells = then_f.find(d);
            auto* e_cells = else_f.find(d);
            if (!t_cells || !e_cells) continue; // frame replaced inside branch; cannot happen
            for (size_t i = 0; i < base_cells.size(); ++i) {
                Cell& tv = (*t_cells)[i];
                Cell& ev = (*e_cells)[i];
                Cell& out = base_cells[i];
                if (tv.kind == Cell::Kind::Int || ev.kind == Cell::Kind::Int) {
                    if (tv.kind != ev.kind || tv.num != ev.num)
                        fail(loc, "int variable '" + d->name +
                                      "' is modified under a bit-valued condition");
                    out = tv;
                    continue;
                }
                if (tv.kind == Cell::Kind::UninitInt || ev.kind == Cell::Kind::UninitInt) {
                    out = tv;
                    continue;
                }
                if (tv.kind == Cell::Kind::UninitBit || ev.kind == Cell::Kind::UninitBit) {
                    // Initialized on at most one path: poison; an actual use
                    // reports the error.
                    out = Cell::uninit(Type::Bit);
                    continue;
                }
                if (tv.bit == ev.bit) {
                    out = tv;
                    continue;
                }
                bind_merge(d, static_cast<int64_t>(i), cond, tv.bit, ev.bit, out);
            }
        }
    }

    void bind_merge(const VarDecl* d, int64_t index, NodeId cond, NodeId t, NodeId e,
                    Cell& out) {
        FormulaArena& f = enc_.arena;
        NodeId merged = f.mk_ite(cond, t, e);
        if (f.is_leaf(merged)) {
            out = Cell::of_bit(merged);
            return;
        }
        uint32_t v = enc_.new_var(VarOrigin::Aux,
                                  VarLabel{d->name, d->is_array ? index : -1,
                                           static_cast<int64_t>(enc_.definitions.size())});
        enc_.add_definition(v, merged);
        if (enc_.definitions.size() > opts_.max_definitions)
            throw ResourceLimitError("definition budget exceeded (" +
                                     std::to_string(opts_.max_definitions) + ")");
        out = Cell::of_bit(f.var(v));
    }

    void exec_for(const Stmt& s) {
        exec_stmt(*s.init_stmt);
        int64_t trips = 0;
        while (int_eval(*s.expr) != 0) {
            ++trips;
            exec_stmt(*s.loop_body);
            exec_stmt(*s.step_stmt);
            if (steps_ > opts_.max_steps)
                throw ResourceLimitError("unroll budget exceeded (" +
                                         std::to_string(opts_.max_steps) + " statements)");
        }
        if (stats_) stats_->loop_trip_counts[&s].insert(trips);
    }

    // --- calls ----------------------------------------------------------------

    Cell exec_call(const Expr& call) {
        const FunctionDecl* fn = call.callee;

        // Arguments are evaluated in the caller's frame, then the callee frame
        // is populated; arrays pass by value.
        std::vector<std::vector<Cell>> arg_cells;
        arg_cells.reserve(fn->params.size());
        for (size_t i = 0; i < fn->params.size(); ++i) {
            const VarDecl& p = *fn->params[i];
            const Expr& arg = *call.args[i];
            if (p.is_array) {
                arg_cells.push_back(cells_of(arg.decl, arg.loc));
            } else if (p.type == Type::Int) {
                arg_cells.push_back({Cell::of_int(int_eval(arg))});
            } else {
                arg_cells.push_back({Cell::of_bit(translate_expr(arg))});
            }
        }

        Frame frame;
        for (size_t i = 0; i < fn->params.size(); ++i)
            frame.declare(fn->params[i].get(), std::move(arg_cells[i]));
        state_.stack.push_back(std::move(frame));

        Cell result = Cell::uninit(Type::Bit);
        const auto& body = fn->body->body;
        for (size_t i = 0; i < body.size(); ++i) {
            const Stmt& st = *body[i];
            if (st.kind == StmtKind::Return) {
                tick(st);
                if (st.expr) {
                    if (fn->return_type == Type::Int)
                        result = Cell::of_int(int_eval(*st.expr));
                    else
                        result = Cell::of_bit(translate_expr(*st.expr));
                }
                break;
            }
            exec_stmt(st);
        }

        state_.stack.pop_back();
        return result;
    }

    // --- program setup / teardown ----------------------------------------------

    void init_globals() {
        for (const auto& g : prog_.ast->globals) {
            std::vector<Cell> cells;
            cells.reserve(static_cast<size_t>(g->length));
            if (g->type == Type::Int) {
                if (g->init)
                    cells.push_back(Cell::of_int(int_eval(*g->init)));
                else
                    for (int64_t i = 0; i < g->length; ++i)
                        cells.push_back(Cell::uninit(Type::Int));
            } else if (g->attr == Attribute::In) {
                for (int64_t i = 0; i < g->length; ++i) {
                    uint32_t v = enc_.new_var(
                        VarOrigin::Input, VarLabel{g->name, g->is_array ? i : -1, -1});
                    enc_.inputs.push_back(v);
                    cells.push_back(Cell::of_bit(enc_.arena.var(v)));
                }
            } else if (g->init) {
                cells.push_back(Cell::of_bit(translate_expr(*g->init)));
            } else {
                for (int64_t i = 0; i < g->length; ++i)
                    cells.push_back(Cell::of_bit(FormulaArena::kFalse));
            }
            state_.globals.declare(g.get(), std::move(cells));
        }
    }

    // Every output must be a single encoding variable, so compound (or
    // constant, or repeated) bindings are promoted to definitions.
    void finalize_outputs() {
        std::vector<uint8_t> used(enc_.num_vars + 1, 0);
        for (const auto& g : prog_.ast->globals) {
            if (g->attr != Attribute::Out) continue;
            auto& cells = *state_.globals.find(g.get());
            for (int64_t i = 0; i < static_cast<int64_t>(cells.size()); ++i) {
                const Cell& c = cells[i];
                NodeId f = c.kind == Cell::Kind::Bit ? c.bit : FormulaArena::kFalse;
                uint32_t out_var = 0;
                if (enc_.arena.is_var(f)) {
                    uint32_t v = enc_.arena.node(f).var;
                    if (!used[v]) out_var = v;
                }
                if (out_var == 0) {
                    out_var = enc_.new_var(VarOrigin::Aux,
                                           VarLabel{g->name, g->is_array ? i : -1,
                                                    static_cast<int64_t>(enc_.definitions.size())});
                    enc_.add_definition(out_var, f);
                    used.resize(enc_.num_vars + 1, 0);
                }
                used[out_var] = 1;
                enc_.outputs.push_back(out_var);
                enc_.output_labels.push_back(VarLabel{g->name, g->is_array ? i : -1, -1});
            }
        }
    }
};

} // namespace

PropositionalEncoding symbolic_translate(const TypedAst& prog, const SymbexOptions& opts,
                                         SymbexStats* stats) {
    Executor ex(prog, opts, stats);
    return ex.run();
}

} // namespace bitblast
