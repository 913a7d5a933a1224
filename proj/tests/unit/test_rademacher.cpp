#include "doctest.h"
#include "helpers.hpp"

#include "gmlab/rademacher.hpp"
#include "gmlab/tensornet.hpp"
#include "gmlab/verify.hpp"

using namespace gmlab;
using testing::Z;

TEST_SUITE("rademacher_recursion") {

TEST_CASE("derivative matrix of a product of two signs") {
    const auto f = testing::scalar_matrix(Z(0) * Z(1));
    const DerivativeMatrix f11 = build_F_ab(f, 1, 1);
    CHECK(f11.matrix.entries().size() == 2);
    for (const auto& [rc, p] : f11.matrix.entries()) CHECK(p == testing::constant(1));
    CHECK(build_F_ab(f, 2, 1).matrix.is_zero());
}

TEST_CASE("bound on a single sign") {
    const BoundBreakdown b = rademacher_bound(testing::scalar_matrix(Z(0)), 1);
    CHECK(b.total == doctest::Approx(32.0));
}

TEST_CASE("bound vanishes on constants") {
    CHECK(rademacher_bound(testing::scalar_matrix(testing::constant(3)), 1).total == 0.0);
}

TEST_CASE("bound on a product of two signs") {
    const BoundBreakdown b = rademacher_bound(testing::scalar_matrix(Z(0) * Z(1)), 1);
    CHECK(b.total == doctest::Approx(4096.0));
    for (const auto& term : b.terms)
        if (term.contribution > 0) CHECK(term.a + term.b == 2);
}

TEST_CASE("theorem check on small examples") {
    const InequalityResult r = verify_theorem_1_2(testing::scalar_matrix(Z(0)), 1, 1);
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(32.0));
    CHECK(r.holds);

    const InequalityResult zero = verify_theorem_1_2(MatrixPolynomial({IndexKey::plain({0})}, {IndexKey::plain({0})}), 2, 1);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.holds);
}

TEST_CASE("theorem holds on random sign polynomials") {
    CorpusSpec spec;
    spec.rademacher_only = true;
    spec.max_slots = 6;
    int k = 0;
    for (const auto& inst : make_corpus(23, 50, spec)) {
        const int t = 1 + (k++ % 2);
        const int n = static_cast<int>(inst.dists.size());
        CHECK(verify_theorem_1_2(inst.mf, n, t).holds);
    }
}

TEST_CASE("exact moment paths agree") {
    CorpusSpec spec;
    spec.rademacher_only = true;
    for (const auto& inst : make_corpus(29, 20, spec)) {
        const int n = static_cast<int>(inst.dists.size());
        const double a = exact_centered_moment(inst.mf, n, 2, inst.dists);
        const double b = exact_centered_moment_direct(inst.mf, n, 2, inst.dists);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}

TEST_CASE("tensor network explicit Schatten values at n = 2") {
    const TensorNetSchatten s = tensornet_schatten(TensorNetwork{2, 1, 1}, 1);
    CHECK(s.formula == doctest::Approx(256.0));
    // Direct count: n^c (n^{4d} - n^{2d}) unit entries.
    CHECK(s.ef20 == doctest::Approx(24.0));
    CHECK(s.ef20 <= s.formula);
}

}
