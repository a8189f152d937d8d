#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bitblast {

// Hash-consed Boolean formula DAG. Structurally identical subformulas are the
// same node, so node ids can be compared for equality and DAG size counts
// unique nodes. Nodes are immutable once interned.
//
// mk_* constructors apply local simplifications before interning: constant
// folding for all kinds, And/Or idempotence and absorption, Xor/Equiv of equal
// children, double negation, and Ite collapse on a constant condition or equal
// branches. Commutative operands are stored in a canonical order.

using NodeId = uint32_t;

enum class FormulaOp : uint8_t { Const, Var, Not, And, Or, Xor, Equiv, Ite };

struct FormulaNode {
    FormulaOp op;
    uint32_t var = 0;        // Var: encoding variable id; Const: 0 or 1
    NodeId a = 0, b = 0, c = 0;
};

class FormulaArena {
public:
    static constexpr NodeId kFalse = 0;
    static constexpr NodeId kTrue = 1;

    FormulaArena();

    NodeId constant(bool v) const { return v ? kTrue : kFalse; }
    NodeId var(uint32_t var_id);

    NodeId mk_not(NodeId f);
    NodeId mk_and(NodeId a, NodeId b);
    NodeId mk_or(NodeId a, NodeId b);
    NodeId mk_xor(NodeId a, NodeId b);
    NodeId mk_equiv(NodeId a, NodeId b);
    NodeId mk_ite(NodeId c, NodeId t, NodeId e);

    const FormulaNode& node(NodeId id) const { return nodes_[id]; }
    size_t size() const { return nodes_.size(); }

    bool is_const(NodeId id) const { return nodes_[id].op == FormulaOp::Const; }
    bool is_true(NodeId id) const { return id == kTrue; }
    bool is_false(NodeId id) const { return id == kFalse; }
    bool is_var(NodeId id) const { return nodes_[id].op == FormulaOp::Var; }
    bool is_leaf(NodeId id) const { return is_const(id) || is_var(id); }

    // Exact set of variable ids reachable from f, ascending. Memoized; the
    // returned reference stays valid while the arena lives.
    const std::vector<uint32_t>& support(NodeId f) const;

    // Infix rendering, e.g. "xor(x1, and(x2, x3))"; used for debug output and
    // byte-exact serialization of encodings.
    std::string to_string(NodeId f) const;

private:
    struct Key {
        FormulaOp op;
        uint32_t var;
        NodeId a, b, c;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            uint64_t h = static_cast<uint64_t>(k.op);
            auto mix = [&h](uint64_t v) {
                h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            };
            mix(k.var);
            mix(k.a);
            mix(k.b);
            mix(k.c);
            return static_cast<size_t>(h);
        }
    };

    NodeId intern(FormulaOp op, uint32_t var, NodeId a, NodeId b, NodeId c);
    bool absorbs(NodeId gate, NodeId inner, FormulaOp inner_op) const;

    std::vector<FormulaNode> nodes_;
    std::unordered_map<Key, NodeId, KeyHash> index_;
    mutable std::vector<std::vector<uint32_t>> support_memo_;
    mutable std::vector<uint8_t> support_done_;
};

// Standard Boolean semantics; Equiv(a,b) = !(a^b), Ite(c,t,e) = c&t | !c&e.
// `assignment` is indexed by variable id; entries must be 0 or 1, anything
// else (or an id outside the span) is reported as an unassigned variable.
int eval(const FormulaArena& arena, NodeId f, std::span<const int8_t> assignment);

} // namespace bitblast
