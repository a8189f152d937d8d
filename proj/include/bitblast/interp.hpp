#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bitblast/semantics.hpp"

namespace bitblast {

// Named bit-vector values, one entry per program variable. Bits are indexed
// by array index (a scalar has exactly one bit). Entry order is preserved.
struct ValueMap {
    std::vector<std::pair<std::string, std::vector<uint8_t>>> entries;

    const std::vector<uint8_t>* find(const std::string& name) const {
        for (const auto& [n, bits] : entries)
            if (n == name) return &bits;
        return nullptr;
    }
    void set(const std::string& name, std::vector<uint8_t> bits) {
        for (auto& [n, b] : entries)
            if (n == name) {
                b = std::move(bits);
                return;
            }
        entries.emplace_back(name, std::move(bits));
    }
};

struct InterpStats {
    std::map<const Stmt*, std::set<int64_t>> loop_trip_counts;
};

// Direct concrete interpretation of the program: loops executed, conditionals
// branched on concrete bits, calls evaluated on a call stack. Completely
// independent of the symbolic translator; serves as the ground-truth oracle.
//
// `inputs` must provide a full-width value for every __in variable; the result
// holds every __out variable in declaration order.
ValueMap interpret(const TypedAst& prog, const ValueMap& inputs,
                   InterpStats* stats = nullptr);

} // namespace bitblast
