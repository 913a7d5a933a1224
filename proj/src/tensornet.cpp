#include "gmlab/tensornet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gmlab/graph.hpp"
#include "gmlab/parallel.hpp"
#include "gmlab/rademacher.hpp"
#include "gmlab/random.hpp"

namespace gmlab {

namespace {

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

int64_t TensorNetwork::side() const { return ipow(n, d); }
int64_t TensorNetwork::copies() const { return ipow(n, c); }
int64_t TensorNetwork::dim() const { return side() * side(); }

void check_tensornet_budget(const TensorNetwork& tn) {
    if (tn.n < 2) throw std::invalid_argument("tensornet needs n >= 2");
    if (tn.c < 1 || tn.c > 2) throw std::invalid_argument("tensornet needs c in {1, 2}");
    if (tn.d < 1) throw std::invalid_argument("tensornet needs d >= 1");
    const double entries = std::pow(double(tn.n), tn.c + 2 * tn.d);
    if (entries > double(kTensorCap))
        throw std::runtime_error("tensornet: " + std::to_string(int64_t(entries)) + " matrix entries exceed the budget of " +
                                 std::to_string(kTensorCap));
}

std::vector<Eigen::MatrixXd> sample_tensornet(const TensorNetwork& tn, uint64_t seed) {
    check_tensornet_budget(tn);
    const int64_t N = tn.side();
    std::vector<Eigen::MatrixXd> A(tn.copies(), Eigen::MatrixXd(N, N));
    Rng rng(seed);
    for (auto& m : A)
        for (int64_t i = 0; i < N; ++i)
            for (int64_t j = 0; j < N; ++j) m(i, j) = rng.coin() ? 1.0 : -1.0;
    return A;
}

LinearOperator tensornet_operator(const TensorNetwork& tn, const std::vector<Eigen::MatrixXd>& A) {
    const int64_t N = tn.side();
    const double nc = double(tn.copies());
    auto run = [N, nc, &A](const Eigen::VectorXd& x, Eigen::VectorXd& y, bool transpose) {
        // Row-major vec: X[j1, j2] = x[j1·N + j2].
        using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        Eigen::Map<const RowMat> X(x.data(), N, N);
        RowMat Y = RowMat::Zero(N, N);
        for (const auto& a : A) {
            if (transpose)
                Y.noalias() += a.transpose() * X * a;
            else
                Y.noalias() += a * X * a.transpose();
        }
        const double tr = X.trace();
        for (int64_t i = 0; i < N; ++i) Y(i, i) -= nc * tr;
        y = Eigen::Map<Eigen::VectorXd>(Y.data(), N * N);
    };
    LinearOperator op;
    op.rows = op.cols = N * N;
    op.apply = [run](const Eigen::VectorXd& x, Eigen::VectorXd& y) { run(x, y, false); };
    op.apply_transpose = [run](const Eigen::VectorXd& x, Eigen::VectorXd& y) { run(x, y, true); };
    return op;
}

MatrixPolynomial tensornet_polynomial(const TensorNetwork& tn) {
    check_tensornet_budget(tn);
    const int64_t N = tn.side(), K = tn.copies();
    if (N * N > 4096) throw std::runtime_error("tensornet: explicit construction limited to N² ≤ 4096");
    std::vector<IndexKey> keys;
    for (int64_t i1 = 0; i1 < N; ++i1)
        for (int64_t i2 = 0; i2 < N; ++i2) keys.push_back(IndexKey::plain({int(i1), int(i2)}));
    MatrixPolynomial m(keys, keys);
    auto slot = [N](int64_t k, int64_t i, int64_t j) { return int((k * N + i) * N + j); };
    for (int64_t i1 = 0; i1 < N; ++i1)
        for (int64_t i2 = 0; i2 < N; ++i2)
            for (int64_t j1 = 0; j1 < N; ++j1)
                for (int64_t j2 = 0; j2 < N; ++j2) {
                    if (i1 == i2 && j1 == j2) continue;
                    Polynomial p;
                    for (int64_t k = 0; k < K; ++k) {
                        int s1 = slot(k, i1, j1), s2 = slot(k, i2, j2);
                        if (s1 > s2) std::swap(s1, s2);
                        p.add_term(MultiIndex({{s1, 1}, {s2, 1}}), 1.0);
                    }
                    m.set(int(i1 * N + i2), int(j1 * N + j2), std::move(p));
                }
    return m;
}

TensorNetReport tensornet_estimate(const TensorNetwork& tn, int samples, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    check_tensornet_budget(tn);
    TensorNetReport rep;
    rep.tn = tn;
    rep.samples.resize(samples);
    parallel_for(size_t(samples), [&](size_t i) {
        const uint64_t sd = derive_seed(seed, i);
        auto A = sample_tensornet(tn, sd);
        SpectralOptions opts;
        opts.seed = derive_seed(sd, 1);
        rep.samples[i] = {spectral_norm(tensornet_operator(tn, A), opts).value, sd};
    });
    for (auto& s : rep.samples) rep.mean_norm += s.norm;
    rep.mean_norm /= samples;
    const double scale = std::pow(double(tn.n), 0.5 * (2 * tn.d + tn.c));
    rep.ratio = rep.mean_norm / scale;
    rep.envelope_ratio = rep.mean_norm / (scale * std::log(double(tn.n)));
    return rep;
}

TensorNetSchatten tensornet_schatten(const TensorNetwork& tn, int t) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    const MatrixPolynomial f = tensornet_polynomial(tn);
    const DistList dists = rademacher_dists(f.max_slot() + 1);
    auto term = [&](int a, int b) {
        const DerivativeMatrix dm = build_F_ab(f, a, b);
        if (dm.matrix.is_zero()) return 0.0;
        return schatten_2t(expectation_matrix(dm.matrix, dists).dense(), t);
    };
    TensorNetSchatten out;
    out.t = t;
    out.ef20 = term(2, 0);
    out.ef11 = term(1, 1);
    out.ef02 = term(0, 2);
    out.formula = std::pow(double(tn.n), tn.c + 4 * tn.d) * std::pow(double(tn.n), t * (2 * tn.d + tn.c));
    out.formula11 = std::pow(2.0, 2 * t + 1) * out.formula;
    return out;
}

}  // namespace gmlab
