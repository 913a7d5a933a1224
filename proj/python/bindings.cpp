#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gmlab/bounds.hpp"
#include "gmlab/commands.hpp"
#include "gmlab/graph.hpp"
#include "gmlab/matrix.hpp"
#include "gmlab/parallel.hpp"
#include "gmlab/shape.hpp"
#include "gmlab/tensornet.hpp"
#include "gmlab/verify.hpp"

namespace py = pybind11;
using namespace gmlab;

namespace {

std::vector<std::string> vertex_names(const Shape& s, const std::vector<int>& idx) {
    std::vector<std::string> out;
    for (int v : idx) out.push_back(s.vertices[v]);
    return out;
}

PRule rule_from(const std::optional<double>& p, const std::optional<std::string>& rule) {
    if (p && rule) throw std::invalid_argument("give at most one of p and p_rule");
    if (rule) return parse_p_rule(*rule);
    return PRule{PRule::Fixed, p.value_or(0.5)};
}

SweepRequest sweep(const Shape& s, std::vector<int> ns, const std::optional<double>& p,
                   const std::optional<std::string>& rule, int samples, uint64_t seed) {
    SweepRequest req;
    req.shape = s;
    req.n_list = std::move(ns);
    req.p = rule_from(p, rule);
    req.samples = samples;
    req.seed = seed;
    return req;
}

}  // namespace

PYBIND11_MODULE(_gmlab, m) {
    m.doc() = "Graph-matrix norm bounds and matrix concentration checks";

    static py::exception<ShapeParseError> parse_error(m, "ShapeParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ShapeParseError& e) {
            PyErr_SetObject(parse_error.ptr(), py::make_tuple(e.what(), e.line(), e.column()).ptr());
        }
    });

    py::class_<Shape>(m, "Shape")
        .def_readonly("name", &Shape::name)
        .def_readonly("vertices", &Shape::vertices)
        .def_property_readonly("edges",
                               [](const Shape& s) {
                                   std::vector<std::pair<std::string, std::string>> out;
                                   for (auto [a, b] : s.edges) out.emplace_back(s.vertices[a], s.vertices[b]);
                                   return out;
                               })
        .def_property_readonly("U", [](const Shape& s) { return vertex_names(s, s.U); })
        .def_property_readonly("V", [](const Shape& s) { return vertex_names(s, s.V); })
        .def("__str__", &print_shape)
        .def("__repr__", [](const Shape& s) { return "<Shape " + s.name + ">"; });

    m.def("parse_shape", &parse_shape, py::arg("text"));
    m.def("load_shape", &load_shape, py::arg("ref"), "built-in name or path to a shape file");
    m.def("builtin_shapes", &builtin_shape_names);
    m.def("print_shape", &print_shape);

    m.def(
        "min_vertex_separator", [](const Shape& s) { return vertex_names(s, min_vertex_separator(s).set); },
        py::arg("shape"));
    m.def(
        "weighted_separator",
        [](const Shape& s, double n, double p) { return vertex_names(s, weighted_separator(s, n, p).set); },
        py::arg("shape"), py::arg("n"), py::arg("p"));

    m.def(
        "bound_json",
        [](const Shape& s, double n, std::optional<double> p, std::optional<std::string> p_rule, std::optional<int> t,
           std::optional<double> eps, double C, double R4) {
            BoundRequest req;
            req.shape = s;
            req.n = n;
            if (p || p_rule) req.p = rule_from(p, p_rule);
            req.t = t;
            req.eps = eps;
            req.consts = BoundConstants{C, R4};
            return cmd_bound(req, OutputFormat::Json);
        },
        py::arg("shape"), py::arg("n"), py::arg("p") = py::none(), py::arg("p_rule") = py::none(),
        py::arg("t") = py::none(), py::arg("eps") = py::none(), py::arg("C") = 1.0, py::arg("R4") = 1.0);

    m.def(
        "empirical_norms",
        [](const Shape& s, int n, double p, int samples, uint64_t seed) {
            py::gil_scoped_release release;
            return empirical_norm(s, n, p, samples, seed).norms;
        },
        py::arg("shape"), py::arg("n"), py::arg("p") = 0.5, py::arg("samples") = 5, py::arg("seed") = kDefaultSeed);

    m.def(
        "scaling_exponent",
        [](const Shape& s, std::vector<int> ns, std::optional<double> p, std::optional<std::string> p_rule,
           int samples, uint64_t seed) {
            const SweepRequest req = sweep(s, std::move(ns), p, p_rule, samples, seed);
            py::gil_scoped_release release;
            return scaling_fit(req).slope;
        },
        py::arg("shape"), py::arg("n_list"), py::arg("p") = py::none(), py::arg("p_rule") = py::none(),
        py::arg("samples") = 5, py::arg("seed") = kDefaultSeed);

    m.def(
        "estimate_csv",
        [](const Shape& s, std::vector<int> ns, std::optional<double> p, std::optional<std::string> p_rule,
           int samples, uint64_t seed) {
            const SweepRequest req = sweep(s, std::move(ns), p, p_rule, samples, seed);
            py::gil_scoped_release release;
            return cmd_estimate(req, OutputFormat::Csv);
        },
        py::arg("shape"), py::arg("n_list"), py::arg("p") = py::none(), py::arg("p_rule") = py::none(),
        py::arg("samples") = 5, py::arg("seed") = kDefaultSeed);

    m.def(
        "graph_matrix",
        [](const Shape& s, int n, double p, uint64_t seed) {
            const EdgeSample g = sample_edges(n, VariableDistribution::p_biased(p), seed);
            return build_graph_matrix(s, g).dense();
        },
        py::arg("shape"), py::arg("n"), py::arg("p") = 0.5, py::arg("seed") = kDefaultSeed);

    m.def(
        "tensornet_json",
        [](std::vector<int> ns, int c, int d, int samples, uint64_t seed, int t) {
            TensorNetRequest req;
            req.n_list = std::move(ns);
            req.c = c;
            req.d = d;
            req.samples = samples;
            req.seed = seed;
            req.max_t = t;
            py::gil_scoped_release release;
            return cmd_tensornet(req, OutputFormat::Json);
        },
        py::arg("n_list"), py::arg("c") = 1, py::arg("d") = 1, py::arg("samples") = 5,
        py::arg("seed") = kDefaultSeed, py::arg("t") = 2);

    m.def(
        "run_suite_json",
        [](const std::string& suite, uint64_t seed) {
            py::gil_scoped_release release;
            return run_suite(suite, seed).to_json();
        },
        py::arg("suite") = "all", py::arg("seed") = kDefaultSeed);
    m.def("suite_names", &suite_names);

    m.def(
        "schatten_2t", [](const Eigen::MatrixXd& a, int t) { return schatten_2t(a, t); }, py::arg("matrix"),
        py::arg("t"));
    m.def(
        "spectral_norm",
        [](const Eigen::MatrixXd& a, double tol) {
            SpectralOptions opts;
            opts.tol = tol;
            return spectral_norm(LinearOperator::from_dense(a), opts).value;
        },
        py::arg("matrix"), py::arg("tol") = 1e-6);

    m.def("set_workers", &set_worker_count, py::arg("workers"));
    m.attr("DEFAULT_SEED") = kDefaultSeed;
}
