#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "gmlab/general.hpp"
#include "gmlab/random.hpp"
#include "gmlab/verify.hpp"

using namespace gmlab;
using testing::Z;

TEST_SUITE("core_algebra") {

TEST_CASE("nabla picks exact sub-monomials") {
    CHECK(nabla(MultiIndex::unit(0), Z(0) * Z(1)) == Z(1));
    CHECK(nabla(MultiIndex::unit(0), Z(0) * Z(0)).is_zero());
    const Polynomial f = Z(0) * Z(0) * Z(1) * 3.0 + Z(1);
    CHECK(nabla(MultiIndex::unit(0, 2), f) == Z(1) * 3.0);
}

TEST_CASE("chi basis elements") {
    const DistList rad = testing::rademacher(2);
    CHECK(chi(MultiIndex::unit(0), rad) == Z(0));
    CHECK(chi(MultiIndex::unit(0, 2), rad) == Z(0) * Z(0) - testing::constant(1));
    const DistList pb = uniform_dists(2, VariableDistribution::p_biased(0.25));
    CHECK(max_coefficient_distance(chi(MultiIndex({{0, 1}, {1, 1}}), pb), Z(0) * Z(1)) < 1e-12);
}

TEST_CASE("chi expansion") {
    const DistList rad = testing::rademacher(2);
    auto g = to_chi_basis(Z(0) * Z(1), rad);
    CHECK(g.constant == 0.0);
    REQUIRE(g.chi_terms.size() == 1);
    CHECK(g.chi_terms.begin()->first == MultiIndex({{0, 1}, {1, 1}}));

    g = to_chi_basis(Z(0) * Z(0), rad);
    CHECK(g.constant == doctest::Approx(1.0));
    REQUIRE(g.chi_terms.size() == 1);
    CHECK(g.chi_terms.at(MultiIndex::unit(0, 2)) == doctest::Approx(1.0));

    g = to_chi_basis(testing::constant(5), rad);
    CHECK(g.chi_terms.empty());
    CHECK(g.constant == 5.0);

    CenteredPolynomial back;
    back.chi_terms[MultiIndex::unit(0, 2)] = 1.0;
    back.constant = 1.0;
    CHECK(max_coefficient_distance(from_chi_basis(back, rad), Z(0) * Z(0)) < 1e-12);
}

TEST_CASE("chi round trip on random polynomials") {
    CorpusSpec spec;
    spec.max_var_degree = 3;
    spec.max_rows = spec.max_cols = 1;
    for (const auto& inst : make_corpus(7, 100, spec)) {
        const Polynomial* f = inst.mf.entry(0, 0);
        if (!f) continue;
        const Polynomial back = from_chi_basis(to_chi_basis(*f, inst.dists), inst.dists);
        CHECK(max_coefficient_distance(back, *f) < 1e-10);
    }
}

TEST_CASE("Laplacian scales chi terms by support size over n") {
    CenteredPolynomial g;
    g.chi_terms[MultiIndex::unit(0)] = 1.0;
    auto l = laplacian(g, 3);
    CHECK(l.chi_terms.at(MultiIndex::unit(0)) == doctest::Approx(1.0 / 3));

    CenteredPolynomial h;
    h.chi_terms[MultiIndex({{0, 1}, {1, 1}})] = 1.0;
    CHECK(laplacian(h, 4).chi_terms.at(MultiIndex({{0, 1}, {1, 1}})) == doctest::Approx(0.5));

    CenteredPolynomial c;
    c.constant = 7.0;
    auto lc = laplacian(c, 3);
    CHECK(lc.constant == 0.0);
    CHECK(lc.chi_terms.empty());

    CHECK(laplacian_inv(g, 3).chi_terms.at(MultiIndex::unit(0)) == doctest::Approx(3.0));
    CHECK(laplacian_inv(h, 2).chi_terms.at(MultiIndex({{0, 1}, {1, 1}})) == doctest::Approx(1.0));
}

TEST_CASE("kernel polynomial of a single chi term") {
    CenteredPolynomial f;
    f.chi_terms[MultiIndex::unit(0)] = 1.0;
    const DistList rad = testing::rademacher(3);
    CHECK(max_coefficient_distance(kernel_poly(f, 1, testing::rademacher(1)), Z(0) - Z(1)) < 1e-12);
    const Polynomial k3 = kernel_poly(f, 3, rad);
    CHECK(max_coefficient_distance(k3, (Z(0) - Z(3)) * 3.0) < 1e-12);
}

TEST_CASE("coordinate difference") {
    auto d = coordinate_difference(Z(0) * Z(1), 0, 1);
    REQUIRE(d.size() == 1);
    CHECK(d[0].first == 1);
    CHECK(d[0].second == Z(1));

    d = coordinate_difference(Z(0) * Z(0), 0, 2);
    REQUIRE(d.size() == 1);
    CHECK(d[0].first == 2);
    CHECK(d[0].second == testing::constant(1));
}

TEST_CASE("coordinate difference and Laplacian identities on random polynomials") {
    CorpusSpec spec;
    spec.max_var_degree = 3;
    spec.max_rows = spec.max_cols = 1;
    for (const auto& inst : make_corpus(11, 100, spec)) {
        const Polynomial* f = inst.mf.entry(0, 0);
        if (!f) continue;
        CHECK(coordinate_difference_residual(*f, inst.dists) < 1e-10);
        CHECK(laplacian_eigen_residual(*f, inst.dists) < 1e-9);
    }
}

TEST_CASE("moments and evaluation") {
    const DistList rad = testing::rademacher(2);
    CHECK(expectation(Z(0) * Z(1), rad) == 0.0);
    CHECK(moment(VariableDistribution::p_biased(0.25), 2) == doctest::Approx(1.0));
    CHECK(VariableDistribution::p_biased(0.25).mean() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((Z(0) * Z(1)).eval({-1, -1}) == 1.0);
}

TEST_CASE("multilinearize reduces squares of signs") {
    CHECK(multilinearize_rademacher(Z(0) * Z(0)) == testing::constant(1));
    CHECK(multilinearize_rademacher(Z(0) * Z(0) * Z(0) * Z(1)) == Z(0) * Z(1));
}

TEST_CASE("multilinearize agrees on every sign vector") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 10;
        Polynomial f;
        for (int term = 0; term < 6; ++term) {
            std::vector<int> e(n);
            for (auto& x : e) x = rng.uniform_int(0, 3);
            f.add_term(MultiIndex::from_dense(e), rng.uniform(-1, 1));
        }
        const Polynomial g = multilinearize_rademacher(f);
        CHECK(g.is_multilinear());
        std::vector<double> z(n);
        for (uint32_t mask = 0; mask < (1u << n); ++mask) {
            for (int i = 0; i < n; ++i) z[i] = (mask >> i & 1) ? 1.0 : -1.0;
            CHECK(g.eval(z) == doctest::Approx(f.eval(z)).epsilon(1e-12));
        }
    }
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
}

}
