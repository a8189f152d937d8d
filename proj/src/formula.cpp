#include "bitblast/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitblast {

FormulaArena::FormulaArena() {
    nodes_.push_back({FormulaOp::Const, 0, 0, 0, 0}); // kFalse
    nodes_.push_back({FormulaOp::Const, 1, 0, 0, 0}); // kTrue
}

NodeId FormulaArena::intern(FormulaOp op, uint32_t var, NodeId a, NodeId b, NodeId c) {
    Key key{op, var, a, b, c};
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({op, var, a, b, c});
    index_.emplace(key, id);
    return id;
}

NodeId FormulaArena::var(uint32_t var_id) {
    if (var_id == 0) throw std::invalid_argument("variable ids start at 1");
    return intern(FormulaOp::Var, var_id, 0, 0, 0);
}

NodeId FormulaArena::mk_not(NodeId f) {
    const FormulaNode& n = nodes_[f];
    if (n.op == FormulaOp::Const) return constant(n.var == 0);
    if (n.op == FormulaOp::Not) return n.a;
    return intern(FormulaOp::Not, 0, f, 0, 0);
}

// true if `gate` (an And/Or node over `inner_op` children) contains `inner`
// as a direct child, i.e. absorption applies.
bool FormulaArena::absorbs(NodeId gate, NodeId inner, FormulaOp inner_op) const {
    const FormulaNode& n = nodes_[gate];
    return n.op == inner_op && (n.a == inner || n.b == inner);
}

NodeId FormulaArena::mk_and(NodeId a, NodeId b) {
    if (is_false(a) || is_false(b)) return kFalse;
    if (is_true(a)) return b;
    if (is_true(b)) return a;
    if (a == b) return a;
    if (absorbs(a, b, FormulaOp::Or)) return b;  // (x|y) & x -> x
    if (absorbs(b, a, FormulaOp::Or)) return a;
    if (a > b) std::swap(a, b);
    return intern(FormulaOp::And, 0, a, b, 0);
}

NodeId FormulaArena::mk_or(NodeId a, NodeId b) {
    if (is_true(a) || is_true(b)) return kTrue;
    if (is_false(a)) return b;
    if (is_false(b)) return a;
    if (a == b) return a;
    if (absorbs(a, b, FormulaOp::And)) return b; // (x&y) | x -> x
    if (absorbs(b, a, FormulaOp::And)) return a;
    if (a > b) std::swap(a, b);
    return intern(FormulaOp::Or, 0, a, b, 0);
}

NodeId FormulaArena::mk_xor(NodeId a, NodeId b) {
    if (is_false(a)) return b;
    if (is_false(b)) return a;
    if (is_true(a)) return mk_not(b);
    if (is_true(b)) return mk_not(a);
    if (a == b) return kFalse;
    if (a > b) std::swap(a, b);
    return intern(FormulaOp::Xor, 0, a, b, 0);
}

NodeId FormulaArena::mk_equiv(NodeId a, NodeId b) {
    if (is_true(a)) return b;
    if (is_true(b)) return a;
    if (is_false(a)) return mk_not(b);
    if (is_false(b)) return mk_not(a);
    if (a == b) return kTrue;
    if (a > b) std::swap(a, b);
    return intern(FormulaOp::Equiv, 0, a, b, 0);
}

NodeId FormulaArena::mk_ite(NodeId c, NodeId t, NodeId e) {
    if (is_true(c)) return t;
    if (is_false(c)) return e;
    if (t == e) return t;
    if (is_true(t) && is_false(e)) return c;
    if (is_false(t) && is_true(e)) return mk_not(c);
    return intern(FormulaOp::Ite, 0, c, t, e);
}

const std::vector<uint32_t>& FormulaArena::support(NodeId f) const {
    if (support_done_.size() < nodes_.size()) {
        support_done_.resize(nodes_.size(), 0);
        support_memo_.resize(nodes_.size());
    }
    if (support_done_[f]) return support_memo_[f];

    // Iterative post-order so deep chains cannot overflow the stack.
    std::vector<NodeId> stack{f};
    while (!stack.empty()) {
        NodeId id = stack.back();
        if (support_done_[id]) {
            stack.pop_back();
            continue;
        }
        const FormulaNode& n = nodes_[id];
        if (n.op == FormulaOp::Const || n.op == FormulaOp::Var) {
            if (n.op == FormulaOp::Var) support_memo_[id] = {n.var};
            support_done_[id] = 1;
            stack.pop_back();
            continue;
        }
        NodeId kids[3] = {n.a, n.b, n.c};
        size_t nk = n.op == FormulaOp::Not ? 1 : (n.op == FormulaOp::Ite ? 3 : 2);
        bool ready = true;
        for (size_t i = 0; i < nk; ++i) {
            if (!support_done_[kids[i]]) {
                stack.push_back(kids[i]);
                ready = false;
            }
        }
        if (!ready) continue;
        std::vector<uint32_t> merged;
        for (size_t i = 0; i < nk; ++i) {
            const auto& s = support_memo_[kids[i]];
            std::vector<uint32_t> tmp;
            tmp.reserve(merged.size() + s.size());
            std::set_union(merged.begin(), merged.end(), s.begin(), s.end(),
                           std::back_inserter(tmp));
            merged = std::move(tmp);
        }
        support_memo_[id] = std::move(merged);
        support_done_[id] = 1;
        stack.pop_back();
    }
    return support_memo_[f];
}

std::string FormulaArena::to_string(NodeId f) const {
    const FormulaNode& n = nodes_[f];
    switch (n.op) {
    case FormulaOp::Const:
        return n.var ? "1" : "0";
    case FormulaOp::Var:
        return "x" + std::to_string(n.var);
    case FormulaOp::Not:
        return "not(" + to_string(n.a) + ")";
    case FormulaOp::And:
        return "and(" + to_string(n.a) + ", " + to_string(n.b) + ")";
    case FormulaOp::Or:
        return "or(" + to_string(n.a) + ", " + to_string(n.b) + ")";
    case FormulaOp::Xor:
        return "xor(" + to_string(n.a) + ", " + to_string(n.b) + ")";
    case FormulaOp::Equiv:
        return "equiv(" + to_string(n.a) + ", " + to_string(n.b) + ")";
    case FormulaOp::Ite:
        return "ite(" + to_string(n.a) + ", " + to_string(n.b) + ", " + to_string(n.c) + ")";
    }
    return "?";
}

int eval(const FormulaArena& arena, NodeId f, std::span<const int8_t> assignment) {
    std::vector<int8_t> memo(arena.size(), -1);
    std::vector<NodeId> stack{f};
    while (!stack.empty()) {
        NodeId id = stack.back();
        if (memo[id] >= 0) {
            stack.pop_back();
            continue;
        }
        const FormulaNode& n = arena.node(id);
        if (n.op == FormulaOp::Const) {
            memo[id] = static_cast<int8_t>(n.var);
            stack.pop_back();
            continue;
        }
        if (n.op == FormulaOp::Var) {
            if (n.var >= assignment.size() || (assignment[n.var] != 0 && assignment[n.var] != 1))
                throw std::invalid_argument("eval: variable x" + std::to_string(n.var) +
                                            " is unassigned");
            memo[id] = assignment[n.var];
            stack.pop_back();
            continue;
        }
        NodeId kids[3] = {n.a, n.b, n.c};
        size_t nk = n.op == FormulaOp::Not ? 1 : (n.op == FormulaOp::Ite ? 3 : 2);
        bool ready = true;
        for (size_t i = 0; i < nk; ++i) {
            if (memo[kids[i]] < 0) {
                stack.push_back(kids[i]);
                ready = false;
            }
        }
        if (!ready) continue;
        int a = memo[n.a];
        int b = nk > 1 ? memo[n.b] : 0;
        int c = nk > 2 ? memo[n.c] : 0;
        int v = 0;
        switch (n.op) {
        case FormulaOp::Not: v = !a; break;
        case FormulaOp::And: v = a & b; break;
        case FormulaOp::Or: v = a | b; break;
        case FormulaOp::Xor: v = a ^ b; break;
        case FormulaOp::Equiv: v = !(a ^ b); break;
        case FormulaOp::Ite: v = a ? b : c; break;
        default: break;
        }
        memo[id] = static_cast<int8_t>(v);
        stack.pop_back();
    }
    return memo[f];
}

} // namespace bitblast
