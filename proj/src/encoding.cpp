#include "bitblast/encoding.hpp"

#include <sstream>
#include <stdexcept>

namespace bitblast {

std::string PropositionalEncoding::to_text() const {
    std::ostringstream os;
    os << "vars " << num_vars << "\n";
    os << "in";
    for (uint32_t v : inputs) os << " x" << v;
    os << "\nout";
    for (uint32_t v : outputs) os << " x" << v;
    os << "\n";
    for (const Definition& d : definitions)
        os << "x" << d.var << " = " << arena.to_string(d.rhs) << "\n";
    return os.str();
}

namespace {

// Shared-memo evaluator: valid across definitions because stratification
// guarantees a node is only reached after all variables it mentions have
// received their final value.
struct ChainEval {
    const FormulaArena& arena;
    std::vector<int8_t>& values;
    std::vector<int8_t> memo;

    explicit ChainEval(const FormulaArena& a, std::vector<int8_t>& v)
        : arena(a), values(v), memo(a.size(), -1) {}

    int run(NodeId f) {
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
                if (n.var >= values.size() || (values[n.var] != 0 && values[n.var] != 1))
                    throw std::invalid_argument("evaluate_definitions: x" +
                                                std::to_string(n.var) + " is unassigned");
                memo[id] = values[n.var];
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
};

} // namespace

void evaluate_definitions(const PropositionalEncoding& enc, std::vector<int8_t>& values) {
    if (values.size() < enc.num_vars + 1)
        throw std::invalid_argument("evaluate_definitions: values vector too small");
    ChainEval ev(enc.arena, values);
    for (const Definition& d : enc.definitions)
        values[d.var] = static_cast<int8_t>(ev.run(d.rhs));
}

} // namespace bitblast
