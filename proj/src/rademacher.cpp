#include "gmlab/rademacher.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gmlab/combinatorics.hpp"

namespace gmlab {

DistList rademacher_dists(int n_slots) { return uniform_dists(n_slots, VariableDistribution::rademacher()); }

DerivativeMatrix build_F_ab(const MatrixPolynomial& mf, int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("derivative orders must be nonnegative");
    if (!mf.is_multilinear()) throw std::invalid_argument("derivative matrices need a multilinear input");
    for (auto& k : mf.rows())
        if (!k.deriv.empty() || k.has_pair) throw std::invalid_argument("input keys must be plain");
    for (auto& k : mf.cols())
        if (!k.deriv.empty() || k.has_pair) throw std::invalid_argument("input keys must be plain");

    std::map<std::pair<IndexKey, IndexKey>, Polynomial> entries;
    for (auto& [rc, p] : mf.entries()) {
        const IndexKey& I = mf.rows()[rc.first];
        const IndexKey& J = mf.cols()[rc.second];
        for (auto& [beta, c] : p.terms()) {
            const std::vector<int> supp = beta.support();
            for_each_k_subset(supp, a, [&](const std::vector<int>& A) {
                const std::vector<int> rest = set_minus(supp, A);
                for_each_k_subset(rest, b, [&](const std::vector<int>& B) {
                    IndexKey rk = I, ck = J;
                    rk.deriv = A;
                    ck.deriv = B;
                    std::vector<int> removed = A;
                    removed.insert(removed.end(), B.begin(), B.end());
                    entries[{rk, ck}].add_term(beta.without(removed), c);
                });
            });
        }
    }
    return DerivativeMatrix{a, b, MatrixPolynomial::from_entries(entries)};
}

BoundBreakdown rademacher_bound(const MatrixPolynomial& mf, int t) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    BoundBreakdown out;
    const int dp = mf.total_degree();
    const DistList dists = rademacher_dists(std::max(mf.max_slot() + 1, 1));
    for (int s = 1; s <= dp; ++s) {
        for (int a = s; a >= 0; --a) {
            const int b = s - a;
            DerivativeMatrix F = build_F_ab(mf, a, b);
            BoundTerm term{a, b, std::pow(16.0 * t * dp, static_cast<double>(s) * t), 0.0, 0.0};
            term.schatten = schatten_2t(expectation_matrix(F.matrix, dists).dense(), t);
            term.contribution = term.factor * term.schatten;
            out.total += term.contribution;
            out.terms.push_back(term);
        }
    }
    return out;
}

double exact_centered_moment(const MatrixPolynomial& mf, int n_slots, int t, const DistList& dists) {
    if (mf.max_slot() >= n_slots) throw std::invalid_argument("matrix uses slots beyond the declared count");
    const Eigen::MatrixXd ef = expectation_matrix(mf, dists).dense();
    const CompiledMatrix cm(mf);
    return exact_expectation<double>(dists, [&](const std::vector<double>& z) {
        return schatten_2t(cm.eval(z) - ef, t);
    });
}

double exact_centered_moment_direct(const MatrixPolynomial& mf, int n_slots, int t, const DistList& dists) {
    if (mf.max_slot() >= n_slots) throw std::invalid_argument("matrix uses slots beyond the declared count");
    std::vector<std::pair<double, Eigen::MatrixXd>> samples;
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(mf.n_rows(), mf.n_cols());
    for_each_configuration(dists, [&](const std::vector<double>& z, double prob) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(mf.n_rows(), mf.n_cols());
        for (int r = 0; r < mf.n_rows(); ++r)
            for (int c = 0; c < mf.n_cols(); ++c)
                if (const Polynomial* p = mf.entry(r, c)) m(r, c) = p->eval(z);
        mean += prob * m;
        samples.emplace_back(prob, std::move(m));
    });
    double total = 0.0;
    for (auto& [prob, m] : samples) total += prob * schatten_2t(m - mean, t, SchattenPath::Singular);
    return total;
}

namespace {

InequalityResult make_result(double lhs, double rhs) {
    InequalityResult r{lhs, rhs, scalar_slack(lhs, rhs), true};
    r.holds = r.slack >= kSlackTol;
    return r;
}

}  // namespace

InequalityResult verify_theorem_1_2(const MatrixPolynomial& mf, int n_slots, int t) {
    const DistList dists = rademacher_dists(n_slots);
    const double lhs = exact_centered_moment(mf, n_slots, t, dists);
    const double rhs = rademacher_bound(mf, t).total;
    return make_result(lhs, rhs);
}

InequalityResult verify_matrix_efron_stein(const MatrixPolynomial& mf, int n_slots, int t, const DistList& dists) {
    const CompiledMatrix cm(mf);
    const Eigen::MatrixXd eh = hermitian_dilation(expectation_matrix(mf, dists).dense());
    const double n = static_cast<double>(n_slots);
    struct Pair {
        double lhs, rhs;
        Pair operator*(double w) const { return {lhs * w, rhs * w}; }
        Pair& operator+=(const Pair& o) {
            lhs += o.lhs;
            rhs += o.rhs;
            return *this;
        }
    };
    Pair p = exact_expectation<Pair>(dists, [&](const std::vector<double>& z) {
        const Eigen::MatrixXd h = hermitian_dilation(cm.eval(z));
        Eigen::MatrixXd v = conditional_expectation<Eigen::MatrixXd>(z, dists, [&](const std::vector<double>& zp, int, double) {
            Eigen::MatrixXd d = h - hermitian_dilation(cm.eval(zp));
            return Eigen::MatrixXd(d * d);
        });
        v *= 0.5 * n;  // sum over coordinates, not the average
        return Pair{schatten_sym(h - eh, 2 * t), schatten_sym(v, t)};
    });
    return make_result(p.lhs, std::pow(4.0 * t - 2.0, t) * p.rhs);
}

InequalityResult verify_level_recursion(const MatrixPolynomial& mf, int n_slots, int t) {
    const DistList dists = rademacher_dists(n_slots);
    const int dp = mf.total_degree();
    std::map<std::pair<int, int>, double> centered, mean_norm;
    for (int s = 0; s <= dp + 1; ++s)
        for (int a = 0; a <= s; ++a) {
            const int b = s - a;
            DerivativeMatrix F = build_F_ab(mf, a, b);
            centered[{a, b}] = F.matrix.is_zero() ? 0.0 : exact_centered_moment(F.matrix, n_slots, t, dists);
            mean_norm[{a, b}] = schatten_2t(expectation_matrix(F.matrix, dists).dense(), t);
        }
    InequalityResult worst;
    worst.slack = INFINITY;
    const double factor = std::pow(16.0 * t * std::max(dp, 1), t);
    for (int s = 0; s <= dp; ++s)
        for (int a = 0; a <= s; ++a) {
            const int b = s - a;
            const double rhs = factor * (centered[{a, b + 1}] + centered[{a + 1, b}] + mean_norm[{a, b + 1}] +
                                         mean_norm[{a + 1, b}]);
            InequalityResult r = make_result(centered[{a, b}], rhs);
            if (r.slack < worst.slack) worst = r;
        }
    if (!std::isfinite(worst.slack)) worst = make_result(0.0, 0.0);
    return worst;
}

double resample_variance_residual(const MatrixPolynomial& mf, int n_slots) {
    const DistList dists = rademacher_dists(n_slots);
    const int dp = mf.total_degree();
    double worst = 0.0;
    for (int s = 0; s <= dp; ++s)
        for (int a = 0; a <= s; ++a) {
            const int b = s - a;
            const MatrixPolynomial F = build_F_ab(mf, a, b).matrix;
            const MatrixPolynomial Fc = build_F_ab(mf, a, b + 1).matrix;
            const MatrixPolynomial Fr = build_F_ab(mf, a + 1, b).matrix;
            const auto row_u = union_keys(F.rows(), Fc.rows());
            const auto col_u = union_keys(F.cols(), Fr.cols());
            const CompiledMatrix f_rows(F, row_u, F.cols()), f_cols(F, F.rows(), col_u);
            const CompiledMatrix fc(Fc, row_u, Fc.cols()), fr(Fr, Fr.rows(), col_u);
            for_each_configuration(dists, [&](const std::vector<double>& z, double) {
                const Eigen::MatrixXd base_r = f_rows.eval(z), base_c = f_cols.eval(z);
                Eigen::MatrixXd lhs1 = Eigen::MatrixXd::Zero(row_u.size(), row_u.size());
                Eigen::MatrixXd lhs2 = Eigen::MatrixXd::Zero(col_u.size(), col_u.size());
                std::vector<double> zp = z;
                for (int i = 0; i < n_slots; ++i) {
                    for (auto& [v, p] : dists[i].support()) {
                        zp[i] = v;
                        const Eigen::MatrixXd d1 = base_r - f_rows.eval(zp);
                        const Eigen::MatrixXd d2 = base_c - f_cols.eval(zp);
                        lhs1 += p * d1 * d1.transpose();
                        lhs2 += p * d2.transpose() * d2;
                    }
                    zp[i] = z[i];
                }
                const Eigen::MatrixXd mc = fc.eval(z), mr = fr.eval(z);
                const Eigen::MatrixXd rhs1 = 2.0 * (b + 1) * mc * mc.transpose();
                const Eigen::MatrixXd rhs2 = 2.0 * (a + 1) * mr.transpose() * mr;
                if (lhs1.size()) worst = std::max(worst, (lhs1 - rhs1).cwiseAbs().maxCoeff());
                if (lhs2.size()) worst = std::max(worst, (lhs2 - rhs2).cwiseAbs().maxCoeff());
            });
        }
    return worst;
}

}  // namespace gmlab
