#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "gmlab/bounds.hpp"
#include "gmlab/graph.hpp"
#include "gmlab/shape.hpp"

using namespace gmlab;

namespace {
std::vector<std::string> names(const Shape& s, const std::vector<int>& set) {
    std::vector<std::string> out;
    for (int v : set) out.push_back(s.vertices[v]);
    return out;
}
}  // namespace

TEST_SUITE("graph_matrices") {

TEST_CASE("parse built-in style shapes") {
    const Shape adj = parse_shape("shape adj { vertices: u, v; edges: (u,v); U: [u]; V: [v]; }");
    CHECK(adj.n_vertices() == 2);
    CHECK(adj.n_edges() == 1);
    const Shape tri = triangle_shape();
    CHECK(tri.n_vertices() == 3);
    CHECK(tri.n_edges() == 3);
    CHECK(names(tri, tri.U) == std::vector<std::string>{"u1"});
    CHECK(names(tri, tri.V) == std::vector<std::string>{"v1", "v2"});
}

TEST_CASE("printing round-trips") {
    for (const Shape& s : {adjacency_shape(), triangle_shape(), two_path_shape(), single_edge_shape()}) {
        const Shape back = parse_shape(print_shape(s));
        CHECK(print_shape(back) == print_shape(s));
    }
}

TEST_CASE("parse errors carry a position") {
    try {
        parse_shape("shape bad {\n  vertices: u, v;\n  edges: (u,w);\n  U: [u];\n  V: [v];\n}");
        FAIL("expected a parse error");
    } catch (const ShapeParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("minimum vertex separators") {
    for (const Shape& s : {adjacency_shape(), triangle_shape(), two_path_shape()}) {
        const SeparatorResult ex = min_vertex_separator(s);
        CHECK(ex.size == 1);
        CHECK(min_cut_separator(s).size == 1);
        CHECK(is_vertex_separator(s, ex.set));
    }
    const Shape tri = triangle_shape();
    CHECK(names(tri, min_vertex_separator(tri).set) == std::vector<std::string>{"u1"});
    const Shape tp = two_path_shape();
    const auto mid = names(tp, min_vertex_separator(tp).set);
    CHECK(mid == std::vector<std::string>{"w1"});
}

TEST_CASE("weighted separator for a single edge") {
    const Shape s = single_edge_shape();
    const double n = 100;
    CHECK(names(s, weighted_separator(s, n, 0.05).set) == std::vector<std::string>{"u"});
    CHECK(names(s, weighted_separator(s, n, 0.001).set) == std::vector<std::string>{"u", "v"});
    CHECK(weighted_separator(s, n, 0.5).size == min_vertex_separator(s).size);
}

TEST_CASE("isolated middle vertices") {
    CHECK(isolated_middle_vertices(triangle_shape()).empty());
    const Shape s = parse_shape("shape iso { vertices: u, v, w; edges: (u,v); U: [u]; V: [v]; }");
    CHECK(names(s, isolated_middle_vertices(s)) == std::vector<std::string>{"w"});
}

TEST_CASE("adjacency graph matrix") {
    const Shape adj = adjacency_shape();
    const EdgeSample g = sample_edges(3, VariableDistribution::rademacher(), 4);
    const Eigen::MatrixXd m = build_graph_matrix(adj, g).dense();
    REQUIRE(m.rows() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(m(i, j) == (i == j ? 0.0 : g.G(i, j)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(m(i, j)) == 1.0);
}

TEST_CASE("matrix-free operator agrees with the materialized matrix") {
    const Shape shapes[] = {adjacency_shape(), triangle_shape(), two_path_shape(), single_edge_shape()};
    for (int trial = 0; trial < 20; ++trial) {
        const Shape& s = shapes[trial % 4];
        const int n = 6 + trial % 7;
        const EdgeSample g = sample_edges(n, VariableDistribution::p_biased(0.3), 100 + trial);
        const Eigen::MatrixXd m = build_graph_matrix(s, g).dense();
        const LinearOperator op = graph_operator(s, g);
        Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(m.cols(), -1, 1), y;
        op.apply(x, y);
        CHECK((y - m * x).cwiseAbs().maxCoeff() < 1e-10);
        Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(m.rows(), 2, -1), v;
        op.apply_transpose(u, v);
        CHECK((v - m.transpose() * u).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("matrix polynomial of a shape matches sampled matrices") {
    const MatrixPolynomial adj = as_matrix_polynomial(adjacency_shape(), 3);
    CHECK(adj.n_rows() == 3);
    const MatrixPolynomial tri = as_matrix_polynomial(triangle_shape(), 4);
    for (const auto& [rc, p] : tri.entries()) {
        CHECK(p.total_degree() == 3);
        CHECK(p.is_multilinear());
    }
    for (int trial = 0; trial < 20; ++trial) {
        const EdgeSample g = sample_edges(5, VariableDistribution::rademacher(), 200 + trial);
        const MatrixPolynomial mp = as_matrix_polynomial(triangle_shape(), 5);
        CHECK((evaluate(mp, g.slot_values()).dense() - build_graph_matrix(triangle_shape(), g).dense()).isZero(0));
    }
}

TEST_CASE("edgeless shape norm and bound") {
    const Shape e = parse_shape("shape point { vertices: u; edges: ; U: [u]; V: [u]; }");
    const GraphBound b = dense_bound(e, 10, 2);
    CHECK(b.value() == doctest::Approx(10.0));
    const NormStats st = empirical_norm(e, 8, 0.5, 3, 1);
    for (double v : st.norms) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("high-probability triangle bound is governed by a linear factor") {
    const GraphBound b = dense_highprob(triangle_shape(), 1e4, 0.01);
    CHECK(b.dominant_exponent == doctest::Approx(1.0));
    const Shape tri = triangle_shape();
    CHECK(names(tri, b.separator.set) == std::vector<std::string>{"u1"});
}

TEST_CASE("sparse bound") {
    const Shape s = single_edge_shape();
    const double n = 1024;
    CHECK(sparse_bound(adjacency_shape(), n, 0.5, 2).dominant_exponent ==
          doctest::Approx(dense_bound(adjacency_shape(), n, 2).dominant_exponent));
    CHECK(sparse_bound(s, n, 1 / std::sqrt(n), 2).dominant_exponent == doctest::Approx(0.5));
}

TEST_CASE("p rules") {
    CHECK(parse_p_rule("fixed:0.25").at(100) == 0.25);
    CHECK(parse_p_rule("power:0.5").at(64) == doctest::Approx(0.125));
    CHECK(parse_p_rule("power:0.5").to_string() == "power:0.5");
    CHECK_THROWS(parse_p_rule("fixed:0.9"));
    CHECK_THROWS(parse_p_rule("bogus"));
}

TEST_CASE("log-log fit recovers a known exponent") {
    const std::vector<double> xs{10, 20, 40, 80};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3 * std::pow(x, 1.5));
    CHECK(fit_log_log(xs, ys).slope == doctest::Approx(1.5));
}

}
