#include "doctest.h"
#include "helpers.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "gmlab/estimation.hpp"
#include "gmlab/random.hpp"
#include "gmlab/verify.hpp"

using namespace gmlab;
using testing::Z;

TEST_SUITE("matrix_functions") {

TEST_CASE("evaluate and expectation of small matrices") {
    const auto m = testing::scalar_matrix(Z(0));
    CHECK(evaluate(m, {-1.0}).dense()(0, 0) == -1.0);
    CHECK(expectation_matrix(m, testing::rademacher(1)).dense()(0, 0) == 0.0);
    CHECK(expectation_matrix(testing::scalar_matrix(Z(0) * Z(0)), testing::rademacher(1)).dense()(0, 0) == 1.0);

    MatrixPolynomial id({IndexKey::plain({0}), IndexKey::plain({1})}, {IndexKey::plain({0}), IndexKey::plain({1})});
    id.set(0, 0, testing::constant(1));
    id.set(1, 1, testing::constant(1));
    CHECK(evaluate(id, {}).dense().isIdentity());
}

TEST_CASE("evaluate agrees with per-entry evaluation") {
    Rng rng(3);
    for (const auto& inst : make_corpus(13, 30, {})) {
        const int n = inst.mf.max_slot() + 1;
        std::vector<double> z(n);
        for (auto& x : z) x = rng.uniform(-2, 2);
        const Eigen::MatrixXd m = evaluate(inst.mf, z).dense();
        for (int r = 0; r < inst.mf.n_rows(); ++r)
            for (int c = 0; c < inst.mf.n_cols(); ++c) {
                const Polynomial* p = inst.mf.entry(r, c);
                CHECK(m(r, c) == doctest::Approx(p ? p->eval(z) : 0.0).epsilon(1e-12));
            }
    }
}

TEST_CASE("expectation matrix agrees with enumeration") {
    for (const auto& inst : make_corpus(17, 30, {})) {
        const Eigen::MatrixXd e = expectation_matrix(inst.mf, inst.dists).dense();
        const CompiledMatrix cm(inst.mf);
        const Eigen::MatrixXd brute = exact_expectation<Eigen::MatrixXd>(
            inst.dists, [&](const std::vector<double>& z) { return cm.eval(z); });
        CHECK((e - brute).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("Hermitian dilation") {
    Eigen::MatrixXd two(1, 1);
    two << 2;
    const Eigen::MatrixXd d = hermitian_dilation(two);
    CHECK(d(0, 0) == 0.0);
    CHECK(d(0, 1) == 2.0);
    CHECK(d(1, 0) == 2.0);
    CHECK(d(1, 1) == 0.0);
    CHECK(hermitian_dilation(Eigen::MatrixXd::Zero(2, 3)).isZero());
}

TEST_CASE("Schatten 2t norms") {
    CHECK(schatten_2t(Eigen::MatrixXd::Identity(5, 5), 3) == doctest::Approx(5.0));
    const Eigen::MatrixXd d = Eigen::Vector2d(3, 4).asDiagonal();
    CHECK(schatten_2t(d, 2) == doctest::Approx(337.0));
    CHECK(schatten_2t(d, 2, SchattenPath::Singular) == doctest::Approx(337.0));
}

TEST_CASE("spectral norm") {
    CHECK(spectral_norm(LinearOperator::from_dense(Eigen::MatrixXd::Identity(4, 4))).value == doctest::Approx(1.0));
    const Eigen::MatrixXd d = Eigen::Vector2d(3, 4).asDiagonal();
    CHECK(spectral_norm(LinearOperator::from_dense(d)).value == doctest::Approx(4.0));
    CHECK(spectral_norm_svd(d) == doctest::Approx(4.0));
}

TEST_CASE("spectral norm matches SVD on random rectangular matrices") {
    Rng rng(99);
    for (const auto method : {SpectralMethod::Lanczos, SpectralMethod::Power}) {
        for (int i = 0; i < 50; ++i) {
            Eigen::MatrixXd m(50, 80);
            for (int r = 0; r < 50; ++r)
                for (int c = 0; c < 80; ++c) m(r, c) = rng.uniform(-1, 1);
            SpectralOptions opts;
            opts.method = method;
            opts.seed = static_cast<uint64_t>(i + 1);
            if (method == SpectralMethod::Power) opts.max_iters = 20000;
            const double ref = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
            const double got = spectral_norm(LinearOperator::from_dense(m), opts).value;
            CHECK(std::abs(got - ref) / ref < 1e-6);
        }
    }
}

}
