#include "bitblast/qm.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace bitblast {

std::vector<uint8_t> truth_table(const FormulaArena& arena, NodeId f,
                                 std::span<const uint32_t> support) {
    if (support.size() > 20) throw std::invalid_argument("truth_table: support too large");
    uint32_t max_var = 0;
    for (uint32_t v : support) max_var = std::max(max_var, v);
    std::vector<int8_t> assignment(max_var + 1, -1);
    size_t rows = size_t(1) << support.size();
    std::vector<uint8_t> table(rows, 0);
    for (size_t m = 0; m < rows; ++m) {
        for (size_t j = 0; j < support.size(); ++j)
            assignment[support[j]] = static_cast<int8_t>(m >> j & 1);
        table[m] = static_cast<uint8_t>(eval(arena, f, assignment));
    }
    return table;
}

bool cover_eval(std::span<const Cube> cover, uint32_t m) {
    for (const Cube& c : cover)
        if (cube_covers(c, m)) return true;
    return false;
}

namespace {

struct CubeLess {
    bool operator()(const Cube& a, const Cube& b) const {
        if (a.mask != b.mask) return a.mask > b.mask; // more literals first
        return a.bits < b.bits;
    }
};

} // namespace

std::vector<Cube> qm_cover(const std::vector<uint8_t>& truth, int n) {
    if (n < 0 || n > 20) throw std::invalid_argument("qm_cover: bad variable count");
    if (truth.size() != size_t(1) << n) throw std::invalid_argument("qm_cover: table size");

    uint32_t full_mask = n == 0 ? 0 : ((uint32_t(1) << n) - 1);

    std::vector<uint32_t> minterms;
    for (uint32_t m = 0; m < truth.size(); ++m)
        if (truth[m]) minterms.push_back(m);
    if (minterms.empty()) return {};
    if (minterms.size() == truth.size()) return {Cube{0, 0}}; // constant one

    // Iteratively combine implicants differing in exactly one cared bit.
    // Grouping by popcount keeps the pairing quadratic per group only.
    std::set<Cube, CubeLess> primes;
    std::map<std::pair<uint32_t, int>, std::vector<Cube>> groups; // (mask, popcount)
    for (uint32_t m : minterms) groups[{full_mask, std::popcount(m)}].push_back({full_mask, m});

    while (!groups.empty()) {
        std::map<std::pair<uint32_t, int>, std::vector<Cube>> next;
        std::set<Cube, CubeLess> combined;
        for (auto& [key, cubes] : groups) {
            std::sort(cubes.begin(), cubes.end(),
                      [](const Cube& a, const Cube& b) { return a.bits < b.bits; });
            cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
        }
        for (auto it = groups.begin(); it != groups.end(); ++it) {
            auto up = groups.find({it->first.first, it->first.second + 1});
            for (const Cube& a : it->second) {
                bool used = false;
                if (up != groups.end()) {
                    for (const Cube& b : up->second) {
                        uint32_t diff = (a.bits ^ b.bits) & a.mask;
                        if (std::popcount(diff) == 1) {
                            used = true;
                            combined.insert(a);
                            combined.insert(b);
                            Cube merged{a.mask & ~diff, a.bits & ~diff};
                            next[{merged.mask, std::popcount(merged.bits & merged.mask)}]
                                .push_back(merged);
                        }
                    }
                }
                // A cube also combines downward; marking happens when the
                // lower group scans upward, so only record non-combining here.
                if (!used && !combined.count(a)) primes.insert(a);
            }
        }
        // Cubes that combined may still appear in `primes` from an earlier
        // group pass; remove them.
        for (const Cube& c : combined) primes.erase(c);
        groups = std::move(next);
    }

    std::vector<Cube> prime_list(primes.begin(), primes.end());

    // Essential primes first, then greedy set cover over the rest.
    std::vector<std::vector<size_t>> covering(truth.size());
    for (size_t p = 0; p < prime_list.size(); ++p)
        for (uint32_t m : minterms)
            if (cube_covers(prime_list[p], m)) covering[m].push_back(p);

    std::vector<uint8_t> chosen(prime_list.size(), 0);
    std::set<uint32_t> uncovered(minterms.begin(), minterms.end());
    for (uint32_t m : minterms)
        if (covering[m].size() == 1) chosen[covering[m][0]] = 1;
    for (size_t p = 0; p < prime_list.size(); ++p)
        if (chosen[p])
            for (auto it = uncovered.begin(); it != uncovered.end();)
                it = cube_covers(prime_list[p], *it) ? uncovered.erase(it) : std::next(it);

    while (!uncovered.empty()) {
        size_t best = prime_list.size();
        size_t best_count = 0;
        for (size_t p = 0; p < prime_list.size(); ++p) {
            if (chosen[p]) continue;
            size_t count = 0;
            for (uint32_t m : uncovered)
                if (cube_covers(prime_list[p], m)) ++count;
            if (count > best_count) { // ties resolved by canonical prime order
                best_count = count;
                best = p;
            }
        }
        chosen[best] = 1;
        for (auto it = uncovered.begin(); it != uncovered.end();)
            it = cube_covers(prime_list[best], *it) ? uncovered.erase(it) : std::next(it);
    }

    std::vector<Cube> cover;
    for (size_t p = 0; p < prime_list.size(); ++p)
        if (chosen[p]) cover.push_back(prime_list[p]);
    return cover;
}

} // namespace bitblast
