#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bitblast/anf.hpp"
#include "bitblast/dnf.hpp"
#include "bitblast/harness.hpp"
#include "bitblast/minimize.hpp"
#include "bitblast/tseitin.hpp"

namespace py = pybind11;
using namespace bitblast;

namespace {

// Python-facing handle for a finished translation. Holds the program so run()
// style helpers can be layered on top without re-parsing.
struct PyTranslation {
    Translation t;
    bool minimized = false;

    size_t num_vars() const { return t.encoding.num_vars; }
    size_t num_definitions() const { return t.encoding.definitions.size(); }
    std::vector<uint32_t> inputs() const { return t.encoding.inputs; }
    std::vector<uint32_t> outputs() const { return t.encoding.outputs; }
    size_t cnf_vars() const { return static_cast<size_t>(t.cnf.num_vars); }
    size_t cnf_clauses() const { return t.cnf.clauses.size(); }
    std::string dimacs() const { return write_dimacs(t.cnf); }
    std::string map() const { return write_map(t.cnf); }
    std::string definitions_text() const { return t.encoding.to_text(); }
    std::string anf() {
        AnfSystem a = emit_anf(t.encoding, 16); // may split oversized definitions in place
        return to_string(a);
    }
    std::string dnf(bool minimized_cover) const {
        return emit_dnf(t.encoding, minimized_cover, 16);
    }
};

ValueMap to_value_map(const py::dict& d) {
    ValueMap m;
    for (auto item : d) {
        std::string name = py::cast<std::string>(item.first);
        std::vector<uint8_t> bits;
        for (auto b : py::cast<py::sequence>(item.second))
            bits.push_back(py::cast<int>(b) ? 1 : 0);
        m.entries.emplace_back(std::move(name), std::move(bits));
    }
    return m;
}

py::dict from_value_map(const ValueMap& m) {
    py::dict d;
    for (const auto& [name, bits] : m.entries) {
        py::list l;
        for (uint8_t b : bits) l.append(static_cast<int>(b));
        d[py::str(name)] = l;
    }
    return d;
}

PyTranslation translate_py(const std::string& source, bool minimize, int limit,
                           bool forward) {
    TranslateOptions opts;
    opts.minimize = minimize;
    opts.limit = limit;
    opts.forward = forward;
    PyTranslation p;
    p.t = translate_source(source, "<python>", opts);
    p.minimized = minimize;
    return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "bit-level programs to propositional encodings";

    py::register_exception<CompileError>(m, "CompileError", PyExc_ValueError);

    py::class_<PyTranslation>(m, "Translation")
        .def_property_readonly("num_vars", &PyTranslation::num_vars,
                               "encoding variables (inputs + definitions)")
        .def_property_readonly("num_definitions", &PyTranslation::num_definitions)
        .def_property_readonly("inputs", &PyTranslation::inputs)
        .def_property_readonly("outputs", &PyTranslation::outputs)
        .def_property_readonly("cnf_vars", &PyTranslation::cnf_vars)
        .def_property_readonly("cnf_clauses", &PyTranslation::cnf_clauses)
        .def("dimacs", &PyTranslation::dimacs, "DIMACS CNF text")
        .def("map", &PyTranslation::map, "input/output variable map lines")
        .def("definitions", &PyTranslation::definitions_text,
             "definition list as text (one x = formula per line)")
        .def("anf", &PyTranslation::anf, "algebraic normal form, one equation per line")
        .def("dnf", &PyTranslation::dnf, py::arg("minimized_cover") = false);

    m.def("translate", &translate_py, py::arg("source"), py::arg("minimize") = false,
          py::arg("limit") = 12, py::arg("forward") = false,
          "Compile a program into its propositional encoding.");

    m.def(
        "run",
        [](const std::string& source, const py::dict& inputs) {
            TypedAst prog = analyze(source, "<python>");
            return from_value_map(interpret(prog, to_value_map(inputs)));
        },
        py::arg("source"), py::arg("inputs"),
        "Concretely interpret a program; inputs/outputs are dicts of bit lists "
        "indexed by array position.");

    m.def(
        "verify",
        [](const std::string& source, uint64_t trials, uint64_t seed, bool minimize) {
            TranslateOptions opts;
            opts.minimize = minimize;
            Translation t = translate_source(source, "<python>", opts);
            VerifyOptions vopts;
            vopts.trials = trials;
            vopts.seed = seed;
            VerifyReport r = verify_translation(t.program, t.cnf, vopts);
            py::dict d;
            d["trials"] = r.trials;
            d["failures"] = r.failures;
            d["seed"] = r.seed;
            d["time_ms"] = r.wall_ms;
            return d;
        },
        py::arg("source"), py::arg("trials") = 100, py::arg("seed") = 1,
        py::arg("minimize") = false,
        "Cross-check the encoding against the interpreter on random inputs.");

    m.def(
        "invert",
        [](const std::string& source, const py::dict& outputs, bool minimize) {
            TranslateOptions opts;
            opts.minimize = minimize;
            Translation t = translate_source(source, "<python>", opts);
            InvertResult r = invert_outputs(t.program, t.cnf, to_value_map(outputs));
            py::dict d;
            switch (r.status) {
            case SolveStatus::Sat: d["status"] = "sat"; break;
            case SolveStatus::Unsat: d["status"] = "unsat"; break;
            case SolveStatus::Unknown: d["status"] = "unknown"; break;
            }
            if (r.status == SolveStatus::Sat) {
                d["inputs"] = from_value_map(r.inputs);
                d["regenerates"] = r.regenerates;
            }
            return d;
        },
        py::arg("source"), py::arg("outputs"), py::arg("minimize") = false,
        "Solve for inputs that produce the given outputs.");
}
