#include "bitblast/dnf.hpp"

#include <sstream>
#include <stdexcept>

#include "bitblast/qm.hpp"

namespace bitblast {

std::string emit_dnf(const PropositionalEncoding& enc, bool minimized_cover, int guard) {
    const FormulaArena& arena = enc.arena;
    std::ostringstream os;
    for (const Definition& def : enc.definitions) {
        const auto& support = arena.support(def.rhs);
        if (static_cast<int>(support.size()) > guard)
            throw std::runtime_error(
                "definition x" + std::to_string(def.var) + " has support " +
                std::to_string(support.size()) + " > " + std::to_string(guard) +
                "; run minimization (or lower --limit) to split it first");

        std::vector<uint8_t> truth = truth_table(arena, def.rhs, support);
        std::vector<Cube> terms;
        if (minimized_cover) {
            terms = qm_cover(truth, static_cast<int>(support.size()));
        } else {
            uint32_t full = support.empty() ? 0 : (uint32_t(1) << support.size()) - 1;
            for (uint32_t m = 0; m < truth.size(); ++m)
                if (truth[m]) terms.push_back({full, m});
        }

        os << "x" << def.var << " = ";
        if (terms.empty()) {
            os << "0\n";
            continue;
        }
        if (terms.size() == 1 && terms[0].mask == 0) {
            os << "1\n";
            continue;
        }
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) os << " | ";
            const Cube& cube = terms[i];
            bool first = true;
            for (size_t j = 0; j < support.size(); ++j) {
                if (!(cube.mask >> j & 1)) continue;
                if (!first) os << "*";
                first = false;
                if (!(cube.bits >> j & 1)) os << "~";
                os << "x" << support[j];
            }
        }
        os << "\n";
    }
    return os.str();
}

} // namespace bitblast
