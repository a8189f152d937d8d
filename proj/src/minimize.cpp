#include "bitblast/minimize.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "bitblast/qm.hpp"

namespace bitblast {

namespace {

// BFS distance from the root for every reachable node; the extraction
// tie-break prefers nodes farther from the root.
void compute_depths(const FormulaArena& arena, NodeId root, std::map<NodeId, int>& depth) {
    std::vector<NodeId> frontier{root};
    depth[root] = 0;
    int d = 0;
    while (!frontier.empty()) {
        ++d;
        std::vector<NodeId> next;
        for (NodeId id : frontier) {
            const FormulaNode& n = arena.node(id);
            if (n.op == FormulaOp::Const || n.op == FormulaOp::Var) continue;
            NodeId kids[3] = {n.a, n.b, n.c};
            size_t nk = n.op == FormulaOp::Not ? 1 : (n.op == FormulaOp::Ite ? 3 : 2);
            for (size_t i = 0; i < nk; ++i) {
                if (depth.emplace(kids[i], d).second) next.push_back(kids[i]);
            }
        }
        frontier = std::move(next);
    }
}

// Rebuilds `root` with `target` replaced by `replacement`.
NodeId substitute(FormulaArena& arena, NodeId root, NodeId target, NodeId replacement,
                  std::map<NodeId, NodeId>& memo) {
    if (root == target) return replacement;
    auto it = memo.find(root);
    if (it != memo.end()) return it->second;
    const FormulaNode n = arena.node(root);
    NodeId result = root;
    switch (n.op) {
    case FormulaOp::Const:
    case FormulaOp::Var:
        break;
    case FormulaOp::Not:
        result = arena.mk_not(substitute(arena, n.a, target, replacement, memo));
        break;
    case FormulaOp::And:
        result = arena.mk_and(substitute(arena, n.a, target, replacement, memo),
                              substitute(arena, n.b, target, replacement, memo));
        break;
    case FormulaOp::Or:
        result = arena.mk_or(substitute(arena, n.a, target, replacement, memo),
                             substitute(arena, n.b, target, replacement, memo));
        break;
    case FormulaOp::Xor:
        result = arena.mk_xor(substitute(arena, n.a, target, replacement, memo),
                              substitute(arena, n.b, target, replacement, memo));
        break;
    case FormulaOp::Equiv:
        result = arena.mk_equiv(substitute(arena, n.a, target, replacement, memo),
                                substitute(arena, n.b, target, replacement, memo));
        break;
    case FormulaOp::Ite:
        result = arena.mk_ite(substitute(arena, n.a, target, replacement, memo),
                              substitute(arena, n.b, target, replacement, memo),
                              substitute(arena, n.c, target, replacement, memo));
        break;
    }
    memo[root] = result;
    return result;
}

// Builds the Or-of-And formula for a cover over the given support.
NodeId cover_formula(FormulaArena& arena, const std::vector<Cube>& cover,
                     std::span<const uint32_t> support) {
    if (cover.empty()) return FormulaArena::kFalse;
    NodeId result = FormulaArena::kFalse;
    for (const Cube& cube : cover) {
        NodeId term = FormulaArena::kTrue;
        for (size_t j = 0; j < support.size(); ++j) {
            if (!(cube.mask >> j & 1)) continue;
            NodeId v = arena.var(support[j]);
            term = arena.mk_and(term, (cube.bits >> j & 1) ? v : arena.mk_not(v));
        }
        result = arena.mk_or(result, term);
    }
    return result;
}

} // namespace

void split_oversized(PropositionalEncoding& enc, int limit) {
    if (limit < 2) throw std::invalid_argument("split limit must be at least 2");
    FormulaArena& arena = enc.arena;

    std::vector<Definition> result;
    result.reserve(enc.definitions.size());
    for (Definition def : enc.definitions) {
        while (static_cast<int>(arena.support(def.rhs).size()) > limit) {
            // Candidate sub-DAGs: internal nodes with support <= limit. Pick
            // the one with maximal support; ties go to the deepest node, then
            // to the lowest minimum variable id.
            std::map<NodeId, int> depth;
            compute_depths(arena, def.rhs, depth);
            NodeId best = 0;
            size_t best_support = 0;
            int best_depth = -1;
            uint32_t best_min_var = 0;
            for (const auto& [id, d] : depth) {
                const FormulaNode& n = arena.node(id);
                if (n.op == FormulaOp::Const || n.op == FormulaOp::Var) continue;
                if (id == def.rhs) continue;
                const auto& sup = arena.support(id);
                if (sup.empty() || static_cast<int>(sup.size()) > limit) continue;
                uint32_t min_var = sup.front();
                bool better = sup.size() > best_support ||
                              (sup.size() == best_support &&
                               (d > best_depth ||
                                (d == best_depth && (best == 0 || min_var < best_min_var))));
                if (better) {
                    best = id;
                    best_support = sup.size();
                    best_depth = d;
                    best_min_var = min_var;
                }
            }
            if (best == 0)
                throw std::logic_error("split_oversized: no extractable sub-DAG");
            uint32_t aux = enc.new_var(
                VarOrigin::Aux, VarLabel{"", -1, static_cast<int64_t>(result.size())});
            result.push_back({aux, best, best, std::nullopt});
            std::map<NodeId, NodeId> memo;
            def.rhs = substitute(arena, def.rhs, best, arena.var(aux), memo);
            def.gate_rhs = def.rhs;
        }
        result.push_back(std::move(def));
    }
    enc.definitions = std::move(result);
}

void minimize_encoding(PropositionalEncoding& enc, int limit) {
    if (limit < 2 || limit > 16)
        throw std::invalid_argument("minimize limit must be in [2, 16]");
    split_oversized(enc, limit);
    FormulaArena& arena = enc.arena;

    for (Definition& def : enc.definitions) {
        const auto& support = arena.support(def.rhs);
        if (support.empty()) continue; // constant body stays as-is
        std::vector<uint8_t> truth = truth_table(arena, def.rhs, support);

        SopCover cover;
        cover.support.assign(support.begin(), support.end());
        cover.on = qm_cover(truth, static_cast<int>(support.size()));
        std::vector<uint8_t> complement(truth.size());
        for (size_t i = 0; i < truth.size(); ++i) complement[i] = !truth[i];
        cover.off = qm_cover(complement, static_cast<int>(support.size()));

        def.rhs = cover_formula(arena, cover.on, cover.support);
        def.cover = std::move(cover);
    }
}

} // namespace bitblast
