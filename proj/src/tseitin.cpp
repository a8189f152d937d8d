#include "bitblast/tseitin.hpp"

#include <limits>
#include <vector>

namespace bitblast {

namespace {

// Pseudo-literals for constant children (possible for Ite branches); clauses
// containing kTrueLit are dropped, kFalseLit literals are removed.
constexpr int kTrueLit = std::numeric_limits<int>::max();
constexpr int kFalseLit = -kTrueLit;

int clause_cost(FormulaOp op) {
    switch (op) {
    case FormulaOp::Not: return 2;
    case FormulaOp::And:
    case FormulaOp::Or: return 3;
    case FormulaOp::Xor:
    case FormulaOp::Equiv:
    case FormulaOp::Ite: return 4;
    default: return 0;
    }
}

class Emitter {
public:
    explicit Emitter(const PropositionalEncoding& enc) : enc_(enc) {}

    ClauseSet run() {
        cs_.num_vars = static_cast<int>(enc_.num_vars);
        cs_.var_map.assign(enc_.num_vars + 1, 0);
        for (uint32_t v = 1; v <= enc_.num_vars; ++v) cs_.var_map[v] = static_cast<int>(v);
        for (uint32_t v : enc_.inputs)
            cs_.inputs.push_back({static_cast<int>(v), enc_.labels[v].name, enc_.labels[v].index});
        for (size_t i = 0; i < enc_.outputs.size(); ++i) {
            const VarLabel& label = i < enc_.output_labels.size() ? enc_.output_labels[i]
                                                                  : enc_.labels[enc_.outputs[i]];
            cs_.outputs.push_back({static_cast<int>(enc_.outputs[i]), label.name, label.index});
        }

        gate_of_.assign(enc_.arena.size(), 0);
        for (const Definition& d : enc_.definitions) {
            int target = static_cast<int>(d.var);
            if (d.cover && cover_clause_count(*d.cover) <= gate_clause_count(d.gate_rhs))
                emit_cover(target, *d.cover);
            else
                clausify_root(d.gate_rhs, target);
        }
        return std::move(cs_);
    }

private:
    const PropositionalEncoding& enc_;
    ClauseSet cs_;
    std::vector<int> gate_of_; // node -> DIMACS literal, 0 = not clausified

    const FormulaArena& arena() const { return enc_.arena; }

    void emit(std::vector<int> lits) {
        std::vector<int> out;
        out.reserve(lits.size());
        for (int l : lits) {
            if (l == kTrueLit) return; // satisfied
            if (l == kFalseLit) continue;
            out.push_back(l);
        }
        cs_.add_clause(std::move(out));
    }

    int leaf_literal(NodeId id) const {
        const FormulaNode& n = arena().node(id);
        if (n.op == FormulaOp::Const) return n.var ? kTrueLit : kFalseLit;
        return static_cast<int>(n.var); // Var: identity mapping
    }

    // Clauses this definition would add under gate clausification, given the
    // gates already emitted. Used to decide cover vs gates.
    int gate_clause_count(NodeId root) const {
        const FormulaNode& n = arena().node(root);
        if (n.op == FormulaOp::Const) return 1;
        if (n.op == FormulaOp::Var) return 2;
        if (gate_of_[root] != 0) return 2; // link target to existing gate
        int count = 0;
        std::vector<NodeId> stack{root};
        std::vector<uint8_t> visited(arena().size(), 0);
        while (!stack.empty()) {
            NodeId id = stack.back();
            stack.pop_back();
            if (visited[id]) continue;
            visited[id] = 1;
            const FormulaNode& m = arena().node(id);
            if (m.op == FormulaOp::Const || m.op == FormulaOp::Var) continue;
            if (id != root && gate_of_[id] != 0) continue;
            count += clause_cost(m.op);
            NodeId kids[3] = {m.a, m.b, m.c};
            size_t nk = m.op == FormulaOp::Not ? 1 : (m.op == FormulaOp::Ite ? 3 : 2);
            for (size_t i = 0; i < nk; ++i) stack.push_back(kids[i]);
        }
        return count;
    }

    static int cover_clause_count(const SopCover& cover) {
        return static_cast<int>(cover.on.size() + cover.off.size());
    }

    void emit_cover(int target, const SopCover& cover) {
        auto cube_clause = [&](const Cube& cube, int head) {
            std::vector<int> lits{head};
            for (size_t j = 0; j < cover.support.size(); ++j) {
                if (!(cube.mask >> j & 1)) continue;
                int var = static_cast<int>(cover.support[j]);
                lits.push_back((cube.bits >> j & 1) ? -var : var);
            }
            emit(std::move(lits));
        };
        for (const Cube& cube : cover.on) cube_clause(cube, target);
        for (const Cube& cube : cover.off) cube_clause(cube, -target);
    }

    // Emits the equivalence clauses for one gate with output literal `g`.
    void emit_gate(FormulaOp op, int g, int a, int b, int c) {
        switch (op) {
        case FormulaOp::Not:
            emit({g, a});
            emit({-g, -a});
            return;
        case FormulaOp::And:
            emit({-g, a});
            emit({-g, b});
            emit({g, -a, -b});
            return;
        case FormulaOp::Or:
            emit({g, -a});
            emit({g, -b});
            emit({-g, a, b});
            return;
        case FormulaOp::Xor:
            emit({-g, a, b});
            emit({-g, -a, -b});
            emit({g, -a, b});
            emit({g, a, -b});
            return;
        case FormulaOp::Equiv:
            emit({-g, -a, b});
            emit({-g, a, -b});
            emit({g, a, b});
            emit({g, -a, -b});
            return;
        case FormulaOp::Ite:
            emit({-g, -a, b});
            emit({-g, a, c});
            emit({g, -a, -b});
            emit({g, a, -c});
            return;
        default:
            return;
        }
    }

    // Literal for an arbitrary node, emitting gate clauses as needed.
    int clausify(NodeId root) {
        if (arena().is_leaf(root)) return leaf_literal(root);
        if (gate_of_[root] != 0) return gate_of_[root];

        std::vector<NodeId> stack{root};
        while (!stack.empty()) {
            NodeId id = stack.back();
            const FormulaNode& n = arena().node(id);
            if (arena().is_leaf(id) || gate_of_[id] != 0) {
                stack.pop_back();
                continue;
            }
            NodeId kids[3] = {n.a, n.b, n.c};
            size_t nk = n.op == FormulaOp::Not ? 1 : (n.op == FormulaOp::Ite ? 3 : 2);
            bool ready = true;
            for (size_t i = 0; i < nk; ++i) {
                if (!arena().is_leaf(kids[i]) && gate_of_[kids[i]] == 0) {
                    stack.push_back(kids[i]);
                    ready = false;
                }
            }
            if (!ready) continue;
            int lits[3] = {0, 0, 0};
            for (size_t i = 0; i < nk; ++i)
                lits[i] = arena().is_leaf(kids[i]) ? leaf_literal(kids[i]) : gate_of_[kids[i]];
            int g = ++cs_.num_vars;
            emit_gate(n.op, g, lits[0], lits[1], lits[2]);
            gate_of_[id] = g;
            stack.pop_back();
        }
        return gate_of_[root];
    }

    // Links definition variable `target` to the formula root: a leaf or an
    // already-shared gate gets equivalence clauses; otherwise the root gate is
    // emitted with `target` as its output variable.
    void clausify_root(NodeId root, int target) {
        const FormulaNode& n = arena().node(root);
        if (n.op == FormulaOp::Const) {
            emit({n.var ? target : -target});
            return;
        }
        if (n.op == FormulaOp::Var) {
            int v = static_cast<int>(n.var);
            emit({target, -v});
            emit({-target, v});
            return;
        }
        if (gate_of_[root] != 0) {
            int g = gate_of_[root];
            emit({target, -g});
            emit({-target, g});
            return;
        }
        NodeId kids[3] = {n.a, n.b, n.c};
        size_t nk = n.op == FormulaOp::Not ? 1 : (n.op == FormulaOp::Ite ? 3 : 2);
        int lits[3] = {0, 0, 0};
        for (size_t i = 0; i < nk; ++i) lits[i] = clausify(kids[i]);
        emit_gate(n.op, target, lits[0], lits[1], lits[2]);
        gate_of_[root] = target;
    }
};

} // namespace

ClauseSet tseitin(const PropositionalEncoding& enc) {
    Emitter e(enc);
    return e.run();
}

} // namespace bitblast
