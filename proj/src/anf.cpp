#include "bitblast/anf.hpp"

#include <algorithm>
#include <sstream>

#include "bitblast/minimize.hpp"
#include "bitblast/qm.hpp"

namespace bitblast {

AnfSystem emit_anf(PropositionalEncoding& enc, int split_limit) {
    split_oversized(enc, split_limit);
    const FormulaArena& arena = enc.arena;

    AnfSystem anf;
    anf.equations.reserve(enc.definitions.size());
    for (const Definition& def : enc.definitions) {
        AnfEquation eq;
        eq.var = def.var;
        const auto& support = arena.support(def.rhs);
        std::vector<uint8_t> coeff = truth_table(arena, def.rhs, support);

        // In-place Mobius transform over GF(2): coeff[m] becomes the
        // coefficient of the monomial selected by mask m.
        for (size_t bit = 0; bit < support.size(); ++bit)
            for (size_t m = 0; m < coeff.size(); ++m)
                if (m >> bit & 1) coeff[m] ^= coeff[m ^ (size_t(1) << bit)];

        for (size_t m = 0; m < coeff.size(); ++m) {
            if (!coeff[m]) continue;
            std::vector<uint32_t> monomial;
            for (size_t j = 0; j < support.size(); ++j)
                if (m >> j & 1) monomial.push_back(support[j]);
            eq.monomials.push_back(std::move(monomial));
        }
        std::sort(eq.monomials.begin(), eq.monomials.end(),
                  [](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
                      if (a.size() != b.size()) return a.size() > b.size();
                      return a < b;
                  });
        anf.equations.push_back(std::move(eq));
    }
    return anf;
}

std::string to_string(const AnfSystem& anf) {
    std::ostringstream os;
    for (const AnfEquation& eq : anf.equations) {
        os << "x" << eq.var << " = ";
        if (eq.monomials.empty()) {
            os << "0\n";
            continue;
        }
        for (size_t i = 0; i < eq.monomials.size(); ++i) {
            if (i) os << " + ";
            const auto& mono = eq.monomials[i];
            if (mono.empty()) {
                os << "1";
            } else {
                for (size_t j = 0; j < mono.size(); ++j) {
                    if (j) os << "*";
                    os << "x" << mono[j];
                }
            }
        }
        os << "\n";
    }
    return os.str();
}

} // namespace bitblast
