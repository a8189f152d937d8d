#include <doctest.h>

#include <memory>
#include <vector>

#include "bitblast/formula.hpp"
#include "bitblast/rng.hpp"

using namespace bitblast;

namespace {

// A plain expression tree with its own non-simplifying evaluator, used as the
// reference semantics for mk_* construction.
struct RefNode {
    FormulaOp op;
    uint32_t var = 0; // Var id or Const value
    std::unique_ptr<RefNode> a, b, c;

    int eval(const std::vector<int8_t>& asg) const {
        switch (op) {
        case FormulaOp::Const: return static_cast<int>(var);
        case FormulaOp::Var: return asg[var];
        case FormulaOp::Not: return !a->eval(asg);
        case FormulaOp::And: return a->eval(asg) & b->eval(asg);
        case FormulaOp::Or: return a->eval(asg) | b->eval(asg);
        case FormulaOp::Xor: return a->eval(asg) ^ b->eval(asg);
        case FormulaOp::Equiv: return !(a->eval(asg) ^ b->eval(asg));
        case FormulaOp::Ite: return a->eval(asg) ? b->eval(asg) : c->eval(asg);
        }
        return 0;
    }

    NodeId build(FormulaArena& f) const {
        switch (op) {
        case FormulaOp::Const: return f.constant(var != 0);
        case FormulaOp::Var: return f.var(var);
        case FormulaOp::Not: return f.mk_not(a->build(f));
        case FormulaOp::And: return f.mk_and(a->build(f), b->build(f));
        case FormulaOp::Or: return f.mk_or(a->build(f), b->build(f));
        case FormulaOp::Xor: return f.mk_xor(a->build(f), b->build(f));
        case FormulaOp::Equiv: return f.mk_equiv(a->build(f), b->build(f));
        case FormulaOp::Ite: return f.mk_ite(a->build(f), b->build(f), c->build(f));
        }
        return FormulaArena::kFalse;
    }
};

std::unique_ptr<RefNode> random_tree(Rng& rng, int depth, uint32_t num_vars) {
    auto node = std::make_unique<RefNode>();
    if (depth == 0 || rng.below(5) == 0) {
        if (rng.below(8) == 0) {
            node->op = FormulaOp::Const;
            node->var = static_cast<uint32_t>(rng.bit());
        } else {
            node->op = FormulaOp::Var;
            node->var = 1 + static_cast<uint32_t>(rng.below(num_vars));
        }
        return node;
    }
    switch (rng.below(6)) {
    case 0: node->op = FormulaOp::Not; break;
    case 1: node->op = FormulaOp::And; break;
    case 2: node->op = FormulaOp::Or; break;
    case 3: node->op = FormulaOp::Xor; break;
    case 4: node->op = FormulaOp::Equiv; break;
    default: node->op = FormulaOp::Ite; break;
    }
    node->a = random_tree(rng, depth - 1, num_vars);
    if (node->op != FormulaOp::Not) node->b = random_tree(rng, depth - 1, num_vars);
    if (node->op == FormulaOp::Ite) node->c = random_tree(rng, depth - 1, num_vars);
    return node;
}

} // namespace

TEST_CASE("mk: local simplifications") {
    FormulaArena f;
    NodeId x = f.var(1), y = f.var(2);
    CHECK(f.mk_and(x, FormulaArena::kTrue) == x);
    CHECK(f.mk_and(x, FormulaArena::kFalse) == FormulaArena::kFalse);
    CHECK(f.mk_or(x, FormulaArena::kFalse) == x);
    CHECK(f.mk_or(x, FormulaArena::kTrue) == FormulaArena::kTrue);
    CHECK(f.mk_xor(x, x) == FormulaArena::kFalse);
    CHECK(f.mk_equiv(x, x) == FormulaArena::kTrue);
    CHECK(f.mk_and(x, x) == x);
    CHECK(f.mk_or(x, x) == x);
    CHECK(f.mk_not(f.mk_not(x)) == x);
    CHECK(f.mk_ite(FormulaArena::kTrue, x, y) == x);
    CHECK(f.mk_ite(FormulaArena::kFalse, x, y) == y);
    CHECK(f.mk_ite(x, y, y) == y);
    CHECK(f.mk_ite(x, FormulaArena::kTrue, FormulaArena::kFalse) == x);
    // absorption
    CHECK(f.mk_and(x, f.mk_or(x, y)) == x);
    CHECK(f.mk_or(x, f.mk_and(x, y)) == x);
    // xor with constant one is negation
    CHECK(f.mk_xor(x, FormulaArena::kTrue) == f.mk_not(x));
}

TEST_CASE("mk: hash-consing returns physically identical nodes") {
    FormulaArena f;
    NodeId a = f.mk_xor(f.var(1), f.var(2));
    NodeId b = f.mk_xor(f.var(1), f.var(2));
    NodeId c = f.mk_xor(f.var(2), f.var(1)); // commutative canonical order
    CHECK(a == b);
    CHECK(a == c);

    Rng rng(2024);
    for (int i = 0; i < 10000; ++i) {
        auto tree = random_tree(rng, 4, 6);
        FormulaArena arena;
        NodeId first = tree->build(arena);
        size_t size_after_first = arena.size();
        NodeId second = tree->build(arena);
        CHECK(first == second);
        CHECK(arena.size() == size_after_first);
    }
}

TEST_CASE("eval: agrees with a naive non-simplifying evaluator on random formulas") {
    Rng rng(77);
    for (int i = 0; i < 10000; ++i) {
        auto tree = random_tree(rng, 5, 10);
        FormulaArena arena;
        NodeId built = tree->build(arena);
        std::vector<int8_t> asg(11);
        for (int v = 1; v <= 10; ++v) asg[static_cast<size_t>(v)] = static_cast<int8_t>(rng.bit());
        CHECK(eval(arena, built, asg) == tree->eval(asg));
    }
}

TEST_CASE("eval: examples") {
    FormulaArena f;
    NodeId x1 = f.var(1), x2 = f.var(2);
    std::vector<int8_t> asg = {0, 1, 1};
    CHECK(eval(f, f.mk_xor(x1, x2), asg) == 0);
    CHECK(eval(f, FormulaArena::kFalse, {}) == 0);

    // Conditional-merge shape or(and(phi,d1), and(!phi,d2)) with phi = 1
    // evaluates to d1's value.
    FormulaArena g;
    NodeId phi = g.var(1), d1 = g.var(2), d2 = g.var(3);
    NodeId merged = g.mk_or(g.mk_and(phi, d1), g.mk_and(g.mk_not(phi), d2));
    for (int b1 = 0; b1 <= 1; ++b1)
        for (int b2 = 0; b2 <= 1; ++b2) {
            std::vector<int8_t> a = {0, 1, static_cast<int8_t>(b1), static_cast<int8_t>(b2)};
            CHECK(eval(g, merged, a) == b1);
        }

    CHECK_THROWS_AS(eval(f, x1, std::vector<int8_t>{0}), std::invalid_argument);
}

TEST_CASE("support: exact variable sets") {
    FormulaArena f;
    NodeId x1 = f.var(1), x2 = f.var(2), x3 = f.var(3), x6 = f.var(6);
    CHECK(f.support(FormulaArena::kTrue).empty());
    CHECK(f.support(f.mk_xor(x1, f.mk_and(x2, x3))) == std::vector<uint32_t>{1, 2, 3});
    NodeId lfsr_step = f.mk_xor(f.mk_xor(f.mk_xor(x1, x2), x3), x6);
    CHECK(f.support(lfsr_step) == std::vector<uint32_t>{1, 2, 3, 6});
    // repeated query hits the memo
    CHECK(f.support(lfsr_step) == std::vector<uint32_t>{1, 2, 3, 6});
}
