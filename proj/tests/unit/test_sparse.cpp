#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "gmlab/random.hpp"
#include "gmlab/sparse.hpp"
#include "gmlab/verify.hpp"

using namespace gmlab;

TEST_SUITE("sparse_bounds") {

TEST_CASE("central moment parameter of biased signs") {
    CHECK(central_moment_param(VariableDistribution::p_biased(0.5)) == doctest::Approx(1.0));
    CHECK(central_moment_param(VariableDistribution::p_biased(0.25)) == doctest::Approx(std::sqrt(3.0)));
    CHECK(central_moment_slack(VariableDistribution::p_biased(0.25), std::sqrt(3.0)) >= -1e-12);
}

TEST_CASE("mu for a single hyperedge") {
    HypergraphPoly f;
    f.add({0, 1}, 2.0);
    const DistList rad = testing::rademacher(2);
    CHECK(mu_r(f, rad, 0) == doctest::Approx(2.0));
    CHECK(mu_r(f, rad, 1) == doctest::Approx(2.0));
    CHECK(mu_r(f, rad, 2) == doctest::Approx(2.0));
}

TEST_CASE("pruned mu agrees with brute force") {
    Rng rng(41);
    for (int i = 0; i < 50; ++i) {
        const HypergraphPoly f = random_hypergraph_poly(rng, 10, 15, 3);
        const DistList d = uniform_dists(f.max_slot() + 1, VariableDistribution::p_biased(0.2).squared());
        for (int r = 0; r <= f.degree(); ++r) CHECK(mu_r(f, d, r) == doctest::Approx(mu_r_brute(f, d, r)).epsilon(1e-12));
    }
}

TEST_CASE("variance and moment bounds") {
    HypergraphPoly zero;
    const DistList rad = testing::rademacher(1);
    CHECK(exact_variance(zero, rad) == 0.0);
    CHECK(ss_variance_bound(zero, rad, 1.0) == 0.0);
    CHECK(exact_central_abs_moment(zero, rad, 2) == 0.0);

    HypergraphPoly y;
    y.add({0}, 1.0);
    CHECK(ss_variance_bound(y, rad, 1.0) == doctest::Approx(32.0));
    CHECK(exact_central_abs_moment(y, rad, 2) == doctest::Approx(1.0));
    CHECK(exact_central_abs_moment(y, rad, 2) <= ss_moment_bound(y, rad, 1.0, 2, 1.0));
}

TEST_CASE("variance bound on random squared-sign polynomials") {
    Rng rng(43);
    const VariableDistribution sq = VariableDistribution::p_biased(0.25).squared();
    const double L = central_moment_param(sq);
    for (int i = 0; i < 30; ++i) {
        const HypergraphPoly f = random_hypergraph_poly(rng, 6, 6, 3);
        const DistList d = uniform_dists(f.max_slot() + 1, sq);
        CHECK(exact_variance(f, d) <= ss_variance_bound(f, d, L) * (1 + 1e-12));
    }
}

TEST_CASE("simple shapes") {
    CHECK_FALSE(is_simple_shape(adjacency_shape()));
    CHECK_FALSE(is_simple_shape(triangle_shape()));
    const Shape s = parse_shape("shape s { vertices: u1, u2, v1; edges: (u1,u2); U: [u1, u2]; V: [v1]; }");
    CHECK(is_simple_shape(s));
}

TEST_CASE("simple shape bound") {
    const Shape inside = parse_shape("shape s { vertices: u1, u2; edges: (u1,u2); U: [u1, u2]; V: [u1, u2]; }");
    const SimpleShapeBound b = simple_shape_bound(inside, 50, 0.25, 2);
    CHECK(b.A_powered == doctest::Approx(9.0));
    CHECK(b.A == doctest::Approx(3.0));

    const Shape e = parse_shape("shape e { vertices: u, v; edges: ; U: [u]; V: [v]; }");
    CHECK(simple_shape_bound(e, 10, 0.25, 2).A == doctest::Approx(100.0));
    CHECK(simple_shape_bound(e, 10, 0.5, 2).A == doctest::Approx(100.0));
}

}
