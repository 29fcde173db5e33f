#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mosr/benchmarks.hpp"
#include "mosr/complexity.hpp"
#include "mosr/config.hpp"
#include "mosr/errors.hpp"
#include "mosr/harness.hpp"
#include "mosr/interpreter.hpp"
#include "mosr/metrics.hpp"
#include "mosr/sexpr.hpp"

namespace py = pybind11;
using namespace mosr;

namespace {

auto dataset_dict(const Dataset& d) -> py::dict
{
    py::dict out;
    out["variable_names"] = d.variable_names;
    out["columns"] = d.columns;
    out["target"] = d.target;
    out["train"] = py::make_tuple(d.train.begin, d.train.end);
    out["test"] = py::make_tuple(d.test.begin, d.test.end);
    return out;
}

auto run_dict(const RunResult& r) -> py::dict
{
    py::list front;
    for (const auto& e : r.front) {
        py::dict entry;
        entry["objectives"] = e.objectives;
        entry["length"] = e.length;
        entry["train_nmse"] = e.train_nmse;
        entry["test_nmse"] = e.test_nmse;
        entry["model"] = e.model;
        front.append(entry);
    }
    py::dict out;
    out["seed"] = r.seed;
    out["front"] = front;
    out["best_index"] = r.best_index;
    out["best_model"] = r.best_model;
    out["train_nmse"] = r.train_nmse;
    out["test_nmse"] = r.test_nmse;
    out["best_length"] = r.best_length;
    out["evaluations"] = r.evaluations;
    return out;
}

} // namespace

PYBIND11_MODULE(_mosr, m)
{
    m.doc() = "Multi-objective symbolic regression with NSGA-II";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Tree>(m, "Tree")
        .def("__len__", &Tree::length)
        .def_property_readonly("length", &Tree::length)
        .def_property_readonly("depth", &Tree::depth)
        .def("__str__", [](const Tree& t) { return to_sexpr(t); })
        .def("__repr__", [](const Tree& t) { return "Tree('" + to_sexpr(t) + "')"; })
        .def("__eq__", [](const Tree& a, const Tree& b) { return a == b; });

    m.def("parse", &parse_sexpr, py::arg("text"));
    m.def("to_sexpr", &to_sexpr, py::arg("tree"));
    m.def(
        "evaluate",
        [](const Tree& t, const std::vector<std::vector<double>>& columns) {
            std::size_t rows = columns.empty() ? 0 : columns.front().size();
            return evaluate(t, columns, Range { 0, rows });
        },
        py::arg("tree"), py::arg("columns"), "Evaluates on column-major inputs (one list per variable).");

    m.def("tree_length", &tree_length_measure, py::arg("tree"));
    m.def("visitation_length", &visitation_length, py::arg("tree"));
    m.def(
        "variable_count",
        [](const Tree& t, bool distinct) {
            return variable_count(t, distinct ? VariableCounting::Distinct : VariableCounting::Occurrences);
        },
        py::arg("tree"), py::arg("distinct") = false);
    m.def(
        "complexity",
        [](const Tree& t, const std::string& rules) { return recursive_complexity(t, rule_table_by_name(rules)); },
        py::arg("tree"), py::arg("rules") = "eq1");

    m.def("pearson_r2", [](const std::vector<double>& p, const std::vector<double>& a) { return pearson_r2(p, a); },
          py::arg("pred"), py::arg("actual"));
    m.def("nmse", [](const std::vector<double>& p, const std::vector<double>& a) { return nmse(p, a); },
          py::arg("pred"), py::arg("actual"));
    m.def(
        "fit_linear_scaling",
        [](const std::vector<double>& p, const std::vector<double>& a) {
            auto s = fit_linear_scaling(p, a);
            return py::make_tuple(s.slope, s.intercept);
        },
        py::arg("pred"), py::arg("actual"));
    m.def(
        "scaled_nmse",
        [](const std::vector<double>& p, const std::vector<double>& a) {
            return scaled_nmse(p, a, fit_linear_scaling(p, a));
        },
        py::arg("pred"), py::arg("actual"));

    m.def("list_problems", [] {
        py::list out;
        for (const auto& p : list_problems()) {
            py::dict d;
            d["name"] = p.name;
            d["n_variables"] = p.n_variables;
            d["train_size"] = p.train_size;
            d["test_size"] = p.test_size;
            d["sampling"] = p.sampling;
            d["noise"] = p.noise;
            out.append(d);
        }
        return out;
    });
    m.def(
        "generate",
        [](const std::string& name, std::uint64_t seed, bool literature_variant) {
            auto spec = problem_spec(name);
            spec.literature_variant = literature_variant;
            return dataset_dict(generate(spec, seed));
        },
        py::arg("problem"), py::arg("seed") = 0, py::arg("literature_variant") = false);

    m.def(
        "run",
        [](const std::string& config_text, std::uint64_t seed) {
            auto config = parse_config(config_text);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = execute_run(config, seed);
            }
            return run_dict(r);
        },
        py::arg("config"), py::arg("seed") = 0, "Runs one seed of an experiment given as config-file text.");
}
