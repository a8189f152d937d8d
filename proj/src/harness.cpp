#include "bitblast/harness.hpp"

#include <chrono>
#include <stdexcept>

#include "bitblast/bitvec_io.hpp"
#include "bitblast/minimize.hpp"
#include "bitblast/tseitin.hpp"

namespace bitblast {

Translation translate_source(const std::string& source, const std::string& filename,
                             const TranslateOptions& opts) {
    Translation t;
    t.program = analyze(source, filename);
    SymbexOptions sopts;
    sopts.forward = opts.forward;
    sopts.max_definitions = opts.max_definitions;
    t.encoding = symbolic_translate(t.program, sopts, &t.stats);
    if (opts.minimize) minimize_encoding(t.encoding, opts.limit);
    t.cnf = tseitin(t.encoding);
    return t;
}

SolveFn internal_solver(uint64_t max_decisions) {
    return [max_decisions](const ClauseSet& cs, std::span<const int> assumptions) {
        Solver solver(cs);
        return solver.solve(assumptions, max_decisions);
    };
}

namespace {

std::vector<int> input_assumptions(const ClauseSet& cnf, const ValueMap& inputs) {
    std::vector<int> lits;
    lits.reserve(cnf.inputs.size());
    for (const IoVar& io : cnf.inputs) {
        const std::vector<uint8_t>* bits = inputs.find(io.name);
        if (!bits) throw std::runtime_error("no value for input '" + io.name + "'");
        size_t idx = io.index < 0 ? 0 : static_cast<size_t>(io.index);
        if (idx >= bits->size())
            throw std::runtime_error("value for '" + io.name + "' is too narrow");
        lits.push_back((*bits)[idx] ? io.dimacs : -io.dimacs);
    }
    return lits;
}

} // namespace

ValueMap random_inputs(const TypedAst& prog, Rng& rng) {
    ValueMap m;
    for (const auto& g : prog.ast->globals) {
        if (g->attr != Attribute::In) continue;
        std::vector<uint8_t> bits(static_cast<size_t>(g->length));
        for (auto& b : bits) b = static_cast<uint8_t>(rng.bit());
        m.entries.emplace_back(g->name, std::move(bits));
    }
    return m;
}

VerifyReport verify_translation(const TypedAst& prog, const ClauseSet& cnf,
                                const VerifyOptions& opts) {
    VerifyReport report;
    report.seed = opts.seed;
    report.trials = opts.trials;
    SolveFn solve = opts.solve ? opts.solve : internal_solver();
    Rng rng(opts.seed);

    auto t0 = std::chrono::steady_clock::now();
    for (uint64_t trial = 0; trial < opts.trials; ++trial) {
        ValueMap inputs = random_inputs(prog, rng);
        ValueMap expected = interpret(prog, inputs);

        bool ok = true;
        SolverResult res = solve(cnf, input_assumptions(cnf, inputs));
        if (res.status != SolveStatus::Sat) {
            ok = false;
        } else {
            if (!check_model(cnf, res.model))
                throw std::runtime_error("solver returned a non-model");
            for (const IoVar& io : cnf.outputs) {
                const std::vector<uint8_t>* bits = expected.find(io.name);
                size_t idx = io.index < 0 ? 0 : static_cast<size_t>(io.index);
                if (!bits || idx >= bits->size())
                    throw std::runtime_error("interpreter produced no output '" + io.name + "'");
                if (res.model[static_cast<size_t>(io.dimacs)] != (*bits)[idx]) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) {
            ++report.failures;
            std::string failing;
            for (const auto& [name, bits] : inputs.entries) {
                if (!failing.empty()) failing += " ";
                failing += format_assignment(name, bits);
            }
            report.failing_inputs.push_back(std::move(failing));
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

InvertResult invert_outputs(const TypedAst& prog, const ClauseSet& cnf,
                            const ValueMap& target_outputs, const SolveFn& solve_in) {
    InvertResult result;
    SolveFn solve = solve_in ? solve_in : internal_solver();

    std::vector<int> assumptions;
    assumptions.reserve(cnf.outputs.size());
    for (const IoVar& io : cnf.outputs) {
        const std::vector<uint8_t>* bits = target_outputs.find(io.name);
        if (!bits) throw std::runtime_error("no value for output '" + io.name + "'");
        size_t idx = io.index < 0 ? 0 : static_cast<size_t>(io.index);
        if (idx >= bits->size())
            throw std::runtime_error("value for '" + io.name + "' is too narrow");
        assumptions.push_back((*bits)[idx] ? io.dimacs : -io.dimacs);
    }

    SolverResult res = solve(cnf, assumptions);
    result.status = res.status;
    if (res.status != SolveStatus::Sat) return result;
    if (!check_model(cnf, res.model))
        throw std::runtime_error("solver returned a non-model");

    for (const auto& g : prog.ast->globals) {
        if (g->attr != Attribute::In) continue;
        result.inputs.entries.emplace_back(g->name,
                                           std::vector<uint8_t>(static_cast<size_t>(g->length)));
    }
    for (const IoVar& io : cnf.inputs) {
        size_t idx = io.index < 0 ? 0 : static_cast<size_t>(io.index);
        for (auto& [name, bits] : result.inputs.entries)
            if (name == io.name) bits[idx] = static_cast<uint8_t>(
                res.model[static_cast<size_t>(io.dimacs)]);
    }

    // The recovered preimage must regenerate the requested outputs.
    ValueMap regenerated = interpret(prog, result.inputs);
    result.regenerates = true;
    for (const IoVar& io : cnf.outputs) {
        const std::vector<uint8_t>* want = target_outputs.find(io.name);
        const std::vector<uint8_t>* got = regenerated.find(io.name);
        size_t idx = io.index < 0 ? 0 : static_cast<size_t>(io.index);
        if (!want || !got || idx >= want->size() || idx >= got->size() ||
            (*want)[idx] != (*got)[idx]) {
            result.regenerates = false;
            break;
        }
    }
    return result;
}

} // namespace bitblast
