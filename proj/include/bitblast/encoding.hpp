#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bitblast/formula.hpp"

namespace bitblast {

enum class VarOrigin : uint8_t { Input, Aux };

// Provenance of an encoding variable: the program variable (and array index)
// it was created for, plus the definition step. Auxiliary variables introduced
// by splitting or output promotion may carry an empty name.
struct VarLabel {
    std::string name;
    int64_t index = -1; // -1 for scalars
    int64_t step = -1;  // definition ordinal, -1 for inputs

    std::string display() const {
        if (name.empty()) return "";
        if (index < 0) return name;
        return name + "[" + std::to_string(index) + "]";
    }
};

// A product term over a definition's support: `mask` selects the positions
// that appear, `bits` gives their polarity (1 = positive literal).
struct Cube {
    uint32_t mask = 0;
    uint32_t bits = 0;
    bool operator==(const Cube&) const = default;
};

// Two-level cover of a definition body and of its complement, produced by the
// minimizer. `support` lists the encoding variable ids the cube positions
// refer to, in ascending order.
struct SopCover {
    std::vector<uint32_t> support;
    std::vector<Cube> on;
    std::vector<Cube> off;
};

struct Definition {
    uint32_t var;
    NodeId rhs;       // current body; the minimizer replaces it with the SOP form
    NodeId gate_rhs;  // original structural body, kept for gate clausification
    std::optional<SopCover> cover;
};

// Ordered list of definitions x' == phi plus the designated input and output
// variable sets. Definitions are stratified: definition k references only
// inputs and variables defined at positions < k.
struct PropositionalEncoding {
    FormulaArena arena;
    uint32_t num_vars = 0;
    std::vector<VarOrigin> origins;  // indexed by var id (entry 0 unused)
    std::vector<VarLabel> labels;    // indexed by var id (entry 0 unused)
    std::vector<uint32_t> inputs;    // ordered X^in
    std::vector<uint32_t> outputs;   // ordered X^out
    // Position-wise provenance of `outputs` (the __out variable and index a
    // position corresponds to). An output can be a copy-propagated input, so
    // its allocation label is not the right name for map files.
    std::vector<VarLabel> output_labels;
    std::vector<Definition> definitions;

    PropositionalEncoding() : origins(1), labels(1) {}

    uint32_t new_var(VarOrigin origin, VarLabel label = {}) {
        ++num_vars;
        origins.push_back(origin);
        labels.push_back(std::move(label));
        return num_vars;
    }

    void add_definition(uint32_t var, NodeId rhs) {
        definitions.push_back({var, rhs, rhs, std::nullopt});
    }

    // Deterministic text dump (definitions, inputs, outputs); two translations
    // of the same source compare byte-equal.
    std::string to_text() const;
};

// Evaluates the definition chain under the given variable assignment:
// `values` must be sized num_vars+1 with every input variable set to 0/1;
// definition variables are filled in order. The extra return is the shared
// node memo, reusable by callers that then evaluate output formulas.
void evaluate_definitions(const PropositionalEncoding& enc, std::vector<int8_t>& values);

} // namespace bitblast
