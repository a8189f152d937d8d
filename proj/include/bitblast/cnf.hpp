#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "bitblast/encoding.hpp"

namespace bitblast {

// An input or output position of the CNF: its DIMACS variable plus the
// program-variable provenance used for map comments.
struct IoVar {
    int dimacs = 0;
    std::string name;
    int64_t index = -1; // -1 for scalars
};

// CNF over integer literals (sign = polarity). Clauses are normalized on
// insertion: literals sorted and de-duplicated, tautologies and repeated
// clauses dropped.
struct ClauseSet {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<int> var_map;    // encoding var id -> DIMACS var (index 0 unused)
    std::vector<IoVar> inputs;   // ordered as X^in
    std::vector<IoVar> outputs;  // ordered as X^out

    // Returns false if the clause was dropped (tautological or duplicate).
    bool add_clause(std::vector<int> lits);

    std::vector<int> input_indices() const {
        std::vector<int> v;
        v.reserve(inputs.size());
        for (const auto& io : inputs) v.push_back(io.dimacs);
        return v;
    }
    std::vector<int> output_indices() const {
        std::vector<int> v;
        v.reserve(outputs.size());
        for (const auto& io : outputs) v.push_back(io.dimacs);
        return v;
    }

private:
    std::set<std::vector<int>> seen_;
};

// DIMACS CNF: header `p cnf <vars> <clauses>`, zero-terminated clauses, and
// `c in/out <name>[<idx>] = <var>` comments carrying the variable map.
void write_dimacs(const ClauseSet& cs, std::ostream& os);
std::string write_dimacs(const ClauseSet& cs);

// Accepts comments anywhere; `c in`/`c out` comments are folded back into the
// variable map. Throws std::runtime_error on malformed input (bad header,
// literal out of range, clause count mismatch).
ClauseSet read_dimacs(std::istream& is);
ClauseSet read_dimacs_text(const std::string& text);

// The in/out map lines alone (same `c in/out ...` syntax), for tool interop.
std::string write_map(const ClauseSet& cs);

} // namespace bitblast
