#include "doctest.h"
#include "helpers.hpp"

#include "gmlab/general.hpp"
#include "gmlab/verify.hpp"

using namespace gmlab;
using testing::Z;

TEST_SUITE("general_recursion") {

TEST_CASE("level decomposition splits by support size") {
    const DistList rad = testing::rademacher(3);
    const auto levels = decompose_levels(testing::scalar_matrix(Z(0) * Z(1) + Z(2)), rad);
    REQUIRE(levels.size() == 2);
    REQUIRE(levels[0].entry(0, 0));
    CHECK(*levels[0].entry(0, 0) == Z(2));
    REQUIRE(levels[1].entry(0, 0));
    CHECK(*levels[1].entry(0, 0) == Z(0) * Z(1));

    for (const auto& x : decompose_levels(testing::scalar_matrix(testing::constant(4)), rad)) CHECK(x.is_zero());
}

TEST_CASE("level for a product of two signs") {
    const DistList rad = testing::rademacher(2);
    const auto mf = testing::scalar_matrix(Z(0) * Z(1));
    const RecursionLevel L = build_level(mf, 2, 1, 1, rad);
    int nonzero = 0;
    for (const auto& [rc, p] : L.G.entries()) {
        CHECK(p == testing::constant(1));
        ++nonzero;
    }
    // Two disjoint splits, each repeated for the two masks γ ≤ α on either side.
    CHECK(nonzero == 8);
    CHECK(chi_support_violation(L, rad) == 0.0);
}

TEST_CASE("kernel properties on a biased product") {
    const DistList pb = uniform_dists(2, VariableDistribution::p_biased(0.25));
    const auto mf = testing::scalar_matrix(Z(0) * Z(1));
    const RecursionLevel L = build_level(mf, 2, 0, 0, pb);
    const MatrixPolynomial K = kernel_matrix(L, pb);
    CHECK(kernel_antisymmetry_residual(K, 2) < 1e-12);
    CHECK(kernel_reproducing_residual(L, K, pb) < 1e-10);
    CHECK(kernel_annihilation_residual(L, K, pb) == 0.0);
    CHECK(kernel_closed_form_residual(L, K, pb) < 1e-10);
}

TEST_CASE("kernel identities on a random corpus") {
    CorpusSpec spec;
    spec.max_var_degree = 2;
    for (const auto& inst : make_corpus(31, 15, spec)) {
        const auto levels = decompose_levels(inst.mf, inst.dists);
        for (int k = 1; k <= static_cast<int>(levels.size()); ++k) {
            if (levels[k - 1].is_zero()) continue;
            const RecursionLevel L =
                build_level_from_component(levels[k - 1], k, 0, 0, inst.dists, inst.mf.max_var_degree(), inst.mf.total_degree());
            const MatrixPolynomial K = kernel_matrix(L, inst.dists);
            CHECK(kernel_reproducing_residual(L, K, inst.dists) < 1e-9);
            CHECK(kernel_closed_form_residual(L, K, inst.dists) < 1e-9);
        }
    }
}

TEST_CASE("level inequalities hold for a product of two signs") {
    const DistList rad = testing::rademacher(2);
    const auto mf = testing::scalar_matrix(Z(0) * Z(1));
    const LevelMoments m = level_moments(mf, 2, 0, 0, rad, 1);
    for (const auto& r : m.mixed) CHECK(r.holds);
    CHECK(m.u_split.holds);
    CHECK(m.v_vs_d2.holds);

    const RecursionLevel L = build_level(mf, 2, 0, 0, rad);
    CHECK(verify_lemma_6_9(L, rad, 1, 1e4).holds);
}

TEST_CASE("general bound is zero on constants and holds on a product") {
    const DistList rad = testing::rademacher(2);
    CHECK(general_bound(testing::scalar_matrix(testing::constant(2)), 1, rad, 1.0).total == 0.0);
    const auto mf = testing::scalar_matrix(Z(0) * Z(1));
    const double c = general_bound_minimal_C(mf, 1, rad);
    CHECK(c > 0.0);
    CHECK(general_bound(mf, 1, rad, c * 1.01).total >= exact_centered_moment(mf, 2, 1, rad));
}

}
