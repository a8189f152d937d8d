// Command-line front end: translate, run, verify, invert.
//
// Exit codes: 0 success, 1 usage or compile diagnostic, 2 verification
// failure, 3 resource cap exceeded.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>

#include "bitblast/anf.hpp"
#include "bitblast/bitvec_io.hpp"
#include "bitblast/dnf.hpp"
#include "bitblast/harness.hpp"
#include "bitblast/minimize.hpp"
#include "bitblast/tseitin.hpp"

namespace fs = std::filesystem;
using namespace bitblast;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerifyFailure = 2;
constexpr int kExitResourceCap = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

struct CommonOpts {
    std::string source_path;
    bool minimize = false;
    int limit = 12;
    bool forward = false;
    uint64_t max_defs = uint64_t(1) << 22;
    std::string solver = "internal";
    uint64_t max_decisions = Solver::kDefaultDecisionCap;
};

void add_translate_opts(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("source", opts.source_path, "program source file")->required();
    cmd->add_flag("--minimize", opts.minimize, "two-level minimization of definitions");
    cmd->add_option("--limit", opts.limit, "support cap for minimization")
        ->check(CLI::Range(2, 16));
    cmd->add_flag("--forward", opts.forward,
                  "forward compound expressions instead of defining variables");
    cmd->add_option("--max-defs", opts.max_defs, "definition budget for unrolling");
}

void add_solver_opts(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--solver", opts.solver, "'internal' or path to an external SAT solver");
    cmd->add_option("--max-decisions", opts.max_decisions,
                    "decision cap for the internal solver");
}

TranslateOptions to_translate_options(const CommonOpts& opts) {
    TranslateOptions t;
    t.minimize = opts.minimize;
    t.limit = opts.limit;
    t.forward = opts.forward;
    t.max_definitions = opts.max_defs;
    return t;
}

// Runs an external solver on the CNF extended with assumption unit clauses
// and parses its SAT-competition style output.
SolverResult run_external_solver(const std::string& solver_path, const ClauseSet& cs,
                                 std::span<const int> assumptions) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path();
    fs::path cnf_path =
        dir / ("bitblast-" + std::to_string(::getpid()) + "-" + std::to_string(counter) + ".cnf");
    fs::path out_path = cnf_path;
    out_path += ".out";
    ++counter;

    ClauseSet extended = cs;
    for (int lit : assumptions) extended.add_clause({lit});
    {
        std::ofstream out(cnf_path);
        write_dimacs(extended, out);
    }
    std::string cmd = solver_path + " " + cnf_path.string() + " > " + out_path.string();
    int rc = std::system(cmd.c_str());
    (void)rc; // solvers use nonzero exits for SAT/UNSAT; the output decides
    std::string text = read_file(out_path.string());
    fs::remove(cnf_path);
    fs::remove(out_path);
    SolverResult res = parse_solver_output(text, extended.num_vars);
    if (res.status == SolveStatus::Sat && !check_model(extended, res.model))
        throw std::runtime_error("external solver returned a non-model");
    return res;
}

SolveFn make_solver(const CommonOpts& opts) {
    if (opts.solver == "internal") return internal_solver(opts.max_decisions);
    std::string path = opts.solver;
    return [path](const ClauseSet& cs, std::span<const int> assumptions) {
        return run_external_solver(path, cs, assumptions);
    };
}

void warn_no_inputs(const Translation& t) {
    if (t.encoding.inputs.empty())
        std::cerr << "warning: program declares no __in variables; the encoding is constant\n";
}

ValueMap parse_assignments(const std::vector<std::string>& texts) {
    ValueMap m;
    for (const auto& text : texts) {
        auto [name, bits] = parse_assignment(text);
        m.set(name, std::move(bits));
    }
    return m;
}

int cmd_translate(const CommonOpts& opts, const std::string& format,
                  std::string out_path) {
    Translation t =
        translate_source(read_file(opts.source_path), opts.source_path,
                         to_translate_options(opts));
    warn_no_inputs(t);

    if (out_path.empty())
        out_path = fs::path(opts.source_path).stem().string() + "." + format;
    fs::path map_path = fs::path(out_path);
    map_path.replace_extension(".map");

    if (format == "cnf") {
        write_file(out_path, write_dimacs(t.cnf));
    } else if (format == "anf") {
        AnfSystem anf = emit_anf(t.encoding, 16);
        write_file(out_path, to_string(anf));
    } else if (format == "dnf") {
        write_file(out_path, emit_dnf(t.encoding, opts.minimize, 16));
    } else {
        std::cerr << "error: unknown format '" << format << "'\n";
        return kExitError;
    }
    write_file(map_path.string(), write_map(t.cnf));

    std::cout << "vars=" << t.cnf.num_vars << " clauses=" << t.cnf.clauses.size()
              << " defs=" << t.encoding.definitions.size() << "\n";
    return kExitOk;
}

int cmd_run(const CommonOpts& opts, const std::vector<std::string>& assignments) {
    TypedAst prog = analyze(read_file(opts.source_path), opts.source_path);
    ValueMap inputs = parse_assignments(assignments);
    for (const auto& [name, bits] : inputs.entries) {
        const VarDecl* decl = nullptr;
        for (const auto& g : prog.ast->globals)
            if (g->name == name) decl = g.get();
        if (!decl || decl->attr != Attribute::In)
            throw std::runtime_error("'" + name + "' is not an __in variable");
    }
    ValueMap outputs = interpret(prog, inputs);
    for (const auto& [name, bits] : outputs.entries)
        std::cout << format_assignment(name, bits) << "\n";
    return kExitOk;
}

int cmd_verify(const CommonOpts& opts, uint64_t trials, uint64_t seed) {
    Translation t =
        translate_source(read_file(opts.source_path), opts.source_path,
                         to_translate_options(opts));
    warn_no_inputs(t);

    VerifyOptions vopts;
    vopts.trials = trials;
    vopts.seed = seed;
    vopts.solve = make_solver(opts);
    VerifyReport report = verify_translation(t.program, t.cnf, vopts);

    std::cout << "trials=" << report.trials << " failures=" << report.failures
              << " seed=" << report.seed << " time_ms=" << static_cast<uint64_t>(report.wall_ms)
              << "\n";
    for (const auto& failing : report.failing_inputs)
        std::cout << "failing_input " << failing << "\n";
    return report.failures == 0 ? kExitOk : kExitVerifyFailure;
}

int cmd_invert(const CommonOpts& opts, const std::vector<std::string>& assignments) {
    Translation t =
        translate_source(read_file(opts.source_path), opts.source_path,
                         to_translate_options(opts));
    ValueMap targets = parse_assignments(assignments);
    for (const auto& [name, bits] : targets.entries) {
        const VarDecl* decl = nullptr;
        for (const auto& g : t.program.ast->globals)
            if (g->name == name) decl = g.get();
        if (!decl || decl->attr != Attribute::Out)
            throw std::runtime_error("'" + name + "' is not an __out variable");
        if (static_cast<int64_t>(bits.size()) != decl->length)
            throw std::runtime_error("'" + name + "' is " + std::to_string(decl->length) +
                                     " bit(s), got " + std::to_string(bits.size()));
    }

    InvertResult result = invert_outputs(t.program, t.cnf, targets, make_solver(opts));
    switch (result.status) {
    case SolveStatus::Unsat:
        std::cout << "status=unsat\n";
        return kExitOk;
    case SolveStatus::Unknown:
        std::cout << "status=unknown\n";
        return kExitResourceCap;
    case SolveStatus::Sat:
        break;
    }
    std::cout << "status=sat regenerates=" << (result.regenerates ? 1 : 0) << "\n";
    for (const auto& [name, bits] : result.inputs.entries)
        std::cout << format_assignment(name, bits) << "\n";
    return result.regenerates ? kExitOk : kExitVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bit-level programs to propositional encodings (CNF/ANF/DNF)"};
    app.require_subcommand(1);

    CommonOpts topts, ropts, vopts, iopts;
    std::string format = "cnf";
    std::string out_path;
    uint64_t trials = 1000, seed = 1;
    std::vector<std::string> run_assignments, invert_assignments;

    CLI::App* translate = app.add_subcommand("translate", "compile a program to CNF/ANF/DNF");
    add_translate_opts(translate, topts);
    translate->add_option("--format", format, "cnf | anf | dnf")
        ->check(CLI::IsMember({"cnf", "anf", "dnf"}));
    translate->add_option("--out", out_path, "output file (map file placed alongside)");

    CLI::App* run = app.add_subcommand("run", "interpret a program on concrete inputs");
    run->add_option("source", ropts.source_path, "program source file")->required();
    run->add_option("inputs", run_assignments, "input assignments, e.g. reg=0x5A3F7:19");

    CLI::App* verify = app.add_subcommand(
        "verify", "check the encoding against the interpreter on random inputs");
    add_translate_opts(verify, vopts);
    verify->add_option("--trials", trials, "number of random trials")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "PRNG seed");
    add_solver_opts(verify, vopts);

    CLI::App* invert = app.add_subcommand("invert", "solve for inputs producing given outputs");
    add_translate_opts(invert, iopts);
    invert->add_option("outputs", invert_assignments,
                       "target output assignments, e.g. stream=0x1f:19");
    add_solver_opts(invert, iopts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (translate->parsed()) return cmd_translate(topts, format, out_path);
        if (run->parsed()) return cmd_run(ropts, run_assignments);
        if (verify->parsed()) return cmd_verify(vopts, trials, seed);
        if (invert->parsed()) return cmd_invert(iopts, invert_assignments);
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const CompileError& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
