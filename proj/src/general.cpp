#include "gmlab/general.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "gmlab/combinatorics.hpp"

namespace gmlab {

namespace {

std::atomic<bool> g_kernel_fault{false};

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void enumerate_alpha(int slot, int n, int remaining, std::vector<std::pair<int, int>>& cur, std::vector<KIndex>& out) {
    if (slot == n) {
        MultiIndex alpha(cur);
        for_each_subset(alpha.support(), [&](const std::vector<int>& g) { out.push_back({alpha, BooleanMask(g)}); });
        return;
    }
    enumerate_alpha(slot + 1, n, remaining, cur, out);
    for (int e = 1; e <= remaining; ++e) {
        cur.emplace_back(slot, e);
        enumerate_alpha(slot + 1, n, remaining - e, cur, out);
        cur.pop_back();
    }
}

std::vector<Polynomial> scalings_for(const std::vector<IndexKey>& keys, const DistList& dists) {
    std::vector<Polynomial> out;
    out.reserve(keys.size());
    for (auto& k : keys) out.push_back(scaling_entry(k.alpha, k.gamma, dists));
    return out;
}

Eigen::VectorXd eval_all(const std::vector<Polynomial>& ps, const std::vector<double>& z) {
    Eigen::VectorXd v(ps.size());
    for (size_t i = 0; i < ps.size(); ++i) v[i] = ps[i].eval(z);
    return v;
}

// No a+b ≤ k check: past that bound the enumeration simply yields nothing.
RecursionLevel assemble_level(const MatrixPolynomial& xk, int k, int a, int b, const DistList& dists, int d, int dp) {
    for (auto& key : xk.rows())
        if (key.has_pair || !key.deriv.empty()) throw std::invalid_argument("input keys must be plain");
    for (auto& key : xk.cols())
        if (key.has_pair || !key.deriv.empty()) throw std::invalid_argument("input keys must be plain");

    std::map<std::pair<IndexKey, IndexKey>, Polynomial> entries;
    for (auto& [rc, p] : xk.entries()) {
        const IndexKey& I = xk.rows()[rc.first];
        const IndexKey& J = xk.cols()[rc.second];
        for (auto& [beta, c] : p.terms()) {
            const std::vector<int> supp = beta.support();
            for_each_k_subset(supp, a, [&](const std::vector<int>& A1) {
                const std::vector<int> rest = set_minus(supp, A1);
                for_each_k_subset(rest, b, [&](const std::vector<int>& A2) {
                    const MultiIndex a1 = beta.restricted_to(A1), a2 = beta.restricted_to(A2);
                    std::vector<int> both = A1;
                    both.insert(both.end(), A2.begin(), A2.end());
                    const MultiIndex rem = beta.without(both);
                    for_each_subset(A1, [&](const std::vector<int>& g1) {
                        for_each_subset(A2, [&](const std::vector<int>& g2) {
                            IndexKey rk = I, ck = J;
                            rk.has_pair = ck.has_pair = true;
                            rk.alpha = a1;
                            rk.gamma = BooleanMask(g1);
                            ck.alpha = a2;
                            ck.gamma = BooleanMask(g2);
                            entries[{rk, ck}].add_term(rem, c);
                        });
                    });
                });
            });
        }
    }

    RecursionLevel L;
    L.k = k;
    L.a = a;
    L.b = b;
    L.n_slots = static_cast<int>(dists.size());
    L.d = d;
    L.dp = dp;
    L.component = xk;
    L.G = MatrixPolynomial::from_entries(entries);
    L.d1 = scalings_for(L.G.rows(), dists);
    L.d2 = scalings_for(L.G.cols(), dists);
    L.F = MatrixPolynomial(L.G.rows(), L.G.cols());
    for (auto& [rc, g] : L.G.entries()) L.F.set(rc.first, rc.second, L.d1[rc.first] * g * L.d2[rc.second]);
    return L;
}

int source_d(const MatrixPolynomial& mf) { return std::max(1, mf.max_var_degree()); }
int source_dp(const MatrixPolynomial& mf) { return std::max(1, mf.total_degree()); }

MatrixPolynomial level_component(const MatrixPolynomial& mf, int k, const DistList& dists) {
    auto levels = decompose_levels(mf, dists);
    if (k >= 1 && k <= static_cast<int>(levels.size())) return levels[k - 1];
    return MatrixPolynomial(mf.rows(), mf.cols());
}

// Swap the z and z' halves of a polynomial over 2n slots.
Polynomial swap_halves(const Polynomial& p, int n) {
    Polynomial out;
    for (auto& [alpha, c] : p.terms()) {
        std::vector<std::pair<int, int>> e;
        for (auto [s, x] : alpha.entries()) e.emplace_back(s < n ? s + n : s - n, x);
        std::sort(e.begin(), e.end());
        out.add_term(MultiIndex(e), c);
    }
    return out;
}

std::vector<double> concat(const std::vector<double>& z, const std::vector<double>& zp) {
    std::vector<double> w = z;
    w.insert(w.end(), zp.begin(), zp.end());
    return w;
}

// Calls fn(zp, i, v, weight) for every exchangeable neighbour of z.
template <class Fn>
void for_each_neighbour(const std::vector<double>& z, const DistList& dists, Fn&& fn) {
    const int n = static_cast<int>(dists.size());
    std::vector<double> zp = z;
    for (int i = 0; i < n; ++i) {
        for (auto& [v, p] : dists[i].support()) {
            zp[i] = v;
            fn(static_cast<const std::vector<double>&>(zp), i, v, p / n);
        }
        zp[i] = z[i];
    }
}

double root_ratio(double num, double den, int t) {
    constexpr double tiny = 1e-12;
    if (num <= tiny) return 0.0;
    if (den <= tiny) return std::numeric_limits<double>::infinity();
    return std::pow(num / den, 1.0 / t);
}

InequalityResult make_result(double lhs, double rhs) {
    InequalityResult r{lhs, rhs, scalar_slack(lhs, rhs), true};
    r.holds = r.slack >= kSlackTol;
    return r;
}

double mean_schatten(const RecursionLevel& L, const DistList& dists, int t, bool dilated) {
    if (L.G.is_zero()) return 0.0;
    const CompiledMatrix f(L.F);
    const double scale = dilated ? 2.0 : 1.0;
    return exact_expectation<double>(dists, [&](const std::vector<double>& z) { return scale * schatten_2t(f.eval(z), t); });
}

}  // namespace

std::vector<KIndex> enumerate_k_index(int n_slots, int dp) {
    std::vector<KIndex> out;
    std::vector<std::pair<int, int>> cur;
    enumerate_alpha(0, n_slots, dp, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

Polynomial scaling_entry(const MultiIndex& alpha, const BooleanMask& gamma, const DistList& dists) {
    double m = 1.0;
    std::vector<std::pair<int, int>> kept;
    for (auto [s, e] : alpha.entries()) {
        if (gamma.contains(s))
            kept.emplace_back(s, e);
        else
            m *= dists.at(s).moment(2 * e);
    }
    return Polynomial::monomial(MultiIndex(kept), std::sqrt(m));
}

std::vector<MatrixPolynomial> decompose_levels(const MatrixPolynomial& mf, const DistList& dists) {
    const int dp = mf.total_degree();
    std::vector<std::map<std::pair<IndexKey, IndexKey>, Polynomial>> parts(std::max(dp, 0));
    for (auto& [rc, p] : mf.entries()) {
        const CenteredPolynomial cp = to_chi_basis(p, dists);
        std::vector<CenteredPolynomial> by_level(parts.size());
        for (auto& [alpha, c] : cp.chi_terms) by_level[alpha.support_size() - 1].chi_terms[alpha] = c;
        for (size_t k = 0; k < parts.size(); ++k) {
            if (by_level[k].chi_terms.empty()) continue;
            parts[k][{mf.rows()[rc.first], mf.cols()[rc.second]}] = from_chi_basis(by_level[k], dists);
        }
    }
    std::vector<MatrixPolynomial> out;
    for (auto& e : parts) out.push_back(MatrixPolynomial::from_entries(e, mf.rows(), mf.cols()));
    return out;
}

double decomposition_residual(const MatrixPolynomial& mf, const DistList& dists) {
    const auto levels = decompose_levels(mf, dists);
    const Eigen::MatrixXd ef = expectation_matrix(mf, dists).dense();
    double worst = 0.0;
    for (int r = 0; r < mf.n_rows(); ++r)
        for (int c = 0; c < mf.n_cols(); ++c) {
            Polynomial sum(ef(r, c));
            for (auto& x : levels)
                if (const Polynomial* p = x.entry(r, c)) sum += *p;
            const Polynomial* orig = mf.entry(r, c);
            worst = std::max(worst, max_coefficient_distance(sum, orig ? *orig : Polynomial()));
        }
    return worst;
}

RecursionLevel build_level_from_component(const MatrixPolynomial& xk, int k, int a, int b, const DistList& dists,
                                          int d, int dp) {
    if (k < 1 || a < 0 || b < 0) throw std::invalid_argument("level needs k >= 1 and a, b >= 0");
    if (a + b > k) throw std::invalid_argument("level needs a + b <= k");
    return assemble_level(xk, k, a, b, dists, d, dp);
}

RecursionLevel build_level(const MatrixPolynomial& mf, int k, int a, int b, const DistList& dists) {
    return build_level_from_component(level_component(mf, k, dists), k, a, b, dists, source_d(mf), source_dp(mf));
}

void set_kernel_fault_injection(bool on) { g_kernel_fault = on; }
bool kernel_fault_injection() { return g_kernel_fault; }

MatrixPolynomial kernel_matrix(const RecursionLevel& level, const DistList& dists) {
    if (level.a + level.b >= level.k) throw std::invalid_argument("inner kernel needs a + b < k");
    const int n = level.n_slots;
    MatrixPolynomial K(level.G.rows(), level.G.cols());
    bool first = true;
    for (auto& [rc, g] : level.G.entries()) {
        CenteredPolynomial cp = to_chi_basis(g, dists);
        if (std::abs(cp.constant) > 1e-9) throw std::logic_error("level entry is not mean-zero");
        cp.constant = 0.0;
        Polynomial kp = kernel_poly(cp, n, dists);
        if (first && g_kernel_fault) kp.add_term(MultiIndex{}, 0.5);
        first = false;
        K.set(rc.first, rc.second, std::move(kp));
    }
    return K;
}

Eigen::MatrixXd inner_kernel(const RecursionLevel& level, const std::vector<double>& z, const std::vector<double>& zp) {
    const int gap = level.k - level.a - level.b;
    if (gap <= 0) throw std::invalid_argument("inner kernel needs a + b < k");
    const CompiledMatrix g(level.G);
    return (static_cast<double>(level.n_slots) / gap) * (g.eval(z) - g.eval(zp));
}

LevelEvaluator::LevelEvaluator(const RecursionLevel& level, const MatrixPolynomial* kernel)
    : level_(level), g_(level.G), has_kernel_(kernel != nullptr) {
    if (kernel) k_ = CompiledMatrix(*kernel);
}

Eigen::MatrixXd LevelEvaluator::F(const std::vector<double>& z) const {
    return eval_all(level_.d1, z).asDiagonal() * g_.eval(z) * eval_all(level_.d2, z).asDiagonal();
}

Eigen::VectorXd LevelEvaluator::D(const std::vector<double>& z) const {
    Eigen::VectorXd v(level_.d1.size() + level_.d2.size());
    v << eval_all(level_.d1, z), eval_all(level_.d2, z);
    return v;
}

Eigen::MatrixXd LevelEvaluator::K(const std::vector<double>& z, const std::vector<double>& zp) const {
    if (!has_kernel_) throw std::logic_error("evaluator was built without a kernel");
    return k_.eval(concat(z, zp));
}

namespace {

struct ProxySum {
    Eigen::MatrixXd m[5];
    ProxySum operator*(double w) const {
        ProxySum o;
        for (int j = 0; j < 5; ++j) o.m[j] = m[j] * w;
        return o;
    }
    ProxySum& operator+=(const ProxySum& o) {
        for (int j = 0; j < 5; ++j) m[j] += o.m[j];
        return *this;
    }
};

VarianceProxies proxies_at(const LevelEvaluator& ev, const std::vector<double>& z, const DistList& dists) {
    const Eigen::VectorXd D = ev.D(z);
    const Eigen::MatrixXd Gb = ev.G_bar(z);
    const Eigen::MatrixXd Fb = D.asDiagonal() * Gb * D.asDiagonal();
    const ProxySum s = conditional_expectation<ProxySum>(z, dists, [&](const std::vector<double>& zp, int, double) {
        const Eigen::VectorXd Dp = ev.D(zp);
        const Eigen::MatrixXd Gbp = ev.G_bar(zp);
        const Eigen::VectorXd dD = D - Dp;
        const Eigen::MatrixXd diff = Fb - Dp.asDiagonal() * Gbp * Dp.asDiagonal();
        const Eigen::MatrixXd w = D.asDiagonal() * hermitian_dilation(ev.K(z, zp)) * D.asDiagonal();
        const Eigen::MatrixXd x = dD.asDiagonal() * Gb * D.asDiagonal();
        const Eigen::MatrixXd mid = D.asDiagonal() * (Gb - Gbp) * D.asDiagonal();
        const Eigen::MatrixXd y = D.asDiagonal() * Gb * dD.asDiagonal();
        ProxySum o;
        o.m[0] = diff * diff;
        o.m[1] = w * w;
        o.m[2] = x * x.transpose();
        o.m[3] = mid * mid;
        o.m[4] = y * y.transpose();
        return o;
    });
    return VarianceProxies{s.m[0], s.m[1], s.m[2], s.m[3], s.m[4]};
}

}  // namespace

VarianceProxies variance_proxies(const RecursionLevel& level, const MatrixPolynomial& kernel,
                                 const std::vector<double>& z, const DistList& dists) {
    const LevelEvaluator ev(level, &kernel);
    return proxies_at(ev, z, dists);
}

double kernel_antisymmetry_residual(const MatrixPolynomial& kernel, int n_slots) {
    double worst = 0.0;
    for (auto& [rc, p] : kernel.entries()) {
        const Polynomial sum = p + swap_halves(p, n_slots);
        worst = std::max(worst, sum.max_abs_coefficient());
    }
    return worst;
}

double kernel_reproducing_residual(const RecursionLevel& level, const MatrixPolynomial& kernel, const DistList& dists) {
    const LevelEvaluator ev(level, &kernel);
    double worst = 0.0;
    for_each_configuration(dists, [&](const std::vector<double>& z, double) {
        const Eigen::MatrixXd ek = conditional_expectation<Eigen::MatrixXd>(
            z, dists, [&](const std::vector<double>& zp, int, double) { return ev.K(z, zp); });
        worst = std::max(worst, max_abs(ek - ev.G(z)));
    });
    return worst;
}

double kernel_annihilation_residual(const RecursionLevel& level, const MatrixPolynomial& kernel, const DistList& dists) {
    const LevelEvaluator ev(level, &kernel);
    const int r = ev.rows(), c = ev.cols();
    double worst = 0.0;
    for_each_configuration(dists, [&](const std::vector<double>& z, double) {
        const Eigen::VectorXd D = ev.D(z);
        for_each_neighbour(z, dists, [&](const std::vector<double>& zp, int, double, double) {
            const Eigen::VectorXd dD = D - ev.D(zp);
            const Eigen::MatrixXd K = ev.K(z, zp);
            worst = std::max(worst, max_abs(dD.head(r).asDiagonal() * K));
            worst = std::max(worst, max_abs(K * dD.tail(c).asDiagonal()));
        });
    });
    return worst;
}

double kernel_closed_form_residual(const RecursionLevel& level, const MatrixPolynomial& kernel, const DistList& dists) {
    const LevelEvaluator ev(level, &kernel);
    const double scale = static_cast<double>(level.n_slots) / (level.k - level.a - level.b);
    const uint64_t total = configuration_count(dists);
    double worst = 0.0;
    auto probe = [&](const std::vector<double>& z, const std::vector<double>& zp) {
        worst = std::max(worst, max_abs(ev.K(z, zp) - scale * (ev.G(z) - ev.G(zp))));
    };
    if (total * total <= default_budget().max_configurations) {
        std::vector<std::vector<double>> all;
        for_each_configuration(dists, [&](const std::vector<double>& z, double) { all.push_back(z); });
        for (auto& z : all)
            for (auto& zp : all) probe(z, zp);
    } else {
        for_each_configuration(dists, [&](const std::vector<double>& z, double) {
            for_each_neighbour(z, dists, [&](const std::vector<double>& zp, int, double, double) { probe(z, zp); });
        });
    }
    return worst;
}

double scaling_annihilation_residual(const RecursionLevel& level, const DistList& dists) {
    const LevelEvaluator ev(level, nullptr);
    double worst = 0.0;
    for_each_configuration(dists, [&](const std::vector<double>& z, double) {
        const Eigen::VectorXd D = ev.D(z);
        const Eigen::MatrixXd Gb = ev.G_bar(z);
        for_each_neighbour(z, dists, [&](const std::vector<double>& zp, int, double, double) {
            const Eigen::VectorXd Dp = ev.D(zp);
            const Eigen::MatrixXd Gbp = ev.G_bar(zp);
            const Eigen::VectorXd dD = D - Dp;
            worst = std::max(worst, max_abs(dD.asDiagonal() * (Gb * D.asDiagonal() - Gbp * Dp.asDiagonal())));
            worst = std::max(worst, max_abs((Gb - Gbp) * dD.asDiagonal()));
        });
    });
    return worst;
}

double derivative_square_sum_residual(const MatrixPolynomial& xk, int k, int a, int b, const DistList& dists, int d,
                                      int dp) {
    const RecursionLevel L = build_level_from_component(xk, k, a, b, dists, d, dp);
    const RecursionLevel Lc = assemble_level(xk, k, a, b + 1, dists, d, dp);
    const RecursionLevel Lr = assemble_level(xk, k, a + 1, b, dists, d, dp);
    const auto row_u = union_keys(L.G.rows(), Lc.G.rows());
    const auto col_u = union_keys(L.G.cols(), Lr.G.cols());
    const auto d1u = scalings_for(row_u, dists), d2u = scalings_for(col_u, dists);
    const auto d1 = scalings_for(L.G.rows(), dists), d2 = scalings_for(L.G.cols(), dists);

    struct Piece {
        int slot, power;
        CompiledMatrix rows_side, cols_side;
    };
    std::vector<Piece> pieces;
    const int n = static_cast<int>(dists.size());
    const int max_l = std::max(1, L.G.max_var_degree());
    for (int i = 0; i < n; ++i)
        for (int l = 1; l <= max_l; ++l) {
            const MultiIndex e = MultiIndex::unit(i, l);
            const MatrixPolynomial N = L.G.map_entries([&](const Polynomial& p) { return nabla(e, p); });
            if (N.is_zero()) continue;
            pieces.push_back({i, l, CompiledMatrix(N, row_u, L.G.cols()), CompiledMatrix(N, L.G.rows(), col_u)});
        }
    const CompiledMatrix fc(Lc.F, row_u, Lc.G.cols()), fr(Lr.F, Lr.G.rows(), col_u);

    double worst = 0.0;
    for_each_configuration(dists, [&](const std::vector<double>& z, double) {
        const Eigen::VectorXd s1u = eval_all(d1u, z), s2u = eval_all(d2u, z);
        const Eigen::VectorXd s1 = eval_all(d1, z), s2 = eval_all(d2, z);
        Eigen::MatrixXd lhs1 = Eigen::MatrixXd::Zero(row_u.size(), row_u.size());
        Eigen::MatrixXd lhs2 = Eigen::MatrixXd::Zero(col_u.size(), col_u.size());
        for (auto& pc : pieces) {
            const double w = std::pow(z[pc.slot], 2 * pc.power) + dists[pc.slot].moment(2 * pc.power);
            const Eigen::MatrixXd n1 = s1u.asDiagonal() * pc.rows_side.eval(z) * s2.asDiagonal();
            const Eigen::MatrixXd n2 = s1.asDiagonal() * pc.cols_side.eval(z) * s2u.asDiagonal();
            lhs1 += w * n1 * n1.transpose();
            lhs2 += w * n2.transpose() * n2;
        }
        const Eigen::MatrixXd mc = fc.eval(z), mr = fr.eval(z);
        worst = std::max(worst, max_abs(lhs1 - (b + 1.0) * mc * mc.transpose()));
        worst = std::max(worst, max_abs(lhs2 - (a + 1.0) * mr.transpose() * mr));
    });
    return worst;
}

double laplacian_eigen_residual(const Polynomial& f, const DistList& dists) {
    const int n = static_cast<int>(dists.size());
    const Polynomial lf = from_chi_basis(laplacian(to_chi_basis(f, dists), n), dists);
    double worst = 0.0;
    for_each_configuration(dists, [&](const std::vector<double>& z, double) {
        const double fz = f.eval(z);
        const double numeric = conditional_expectation<double>(
            z, dists, [&](const std::vector<double>& zp, int, double) { return fz - f.eval(zp); });
        worst = std::max(worst, std::abs(numeric - lf.eval(z)));
    });
    return worst;
}

double coordinate_difference_residual(const Polynomial& f, const DistList& dists) {
    const int n = static_cast<int>(dists.size());
    std::vector<std::vector<std::pair<int, Polynomial>>> parts(n);
    for (int i = 0; i < n; ++i) parts[i] = coordinate_difference(f, i, std::max(1, f.degree_in(i)));
    double worst = 0.0;
    for_each_configuration(dists, [&](const std::vector<double>& z, double) {
        const double fz = f.eval(z);
        for_each_neighbour(z, dists, [&](const std::vector<double>& zp, int i, double v, double) {
            double sum = 0.0;
            for (auto& [l, g] : parts[i]) sum += (std::pow(z[i], l) - std::pow(v, l)) * g.eval(z);
            worst = std::max(worst, std::abs(fz - f.eval(zp) - sum));
        });
    });
    return worst;
}

double chi_support_violation(const RecursionLevel& level, const DistList& dists) {
    const int want = level.k - level.a - level.b;
    double worst = 0.0;
    for (auto& [rc, g] : level.G.entries()) {
        const CenteredPolynomial cp = to_chi_basis(g, dists);
        if (want > 0) worst = std::max(worst, std::abs(cp.constant));
        for (auto& [alpha, c] : cp.chi_terms)
            if (alpha.support_size() != want) worst = std::max(worst, std::abs(c));
    }
    return worst;
}

LevelMoments level_moments(const MatrixPolynomial& mf, int k, int a, int b, const DistList& dists, int t) {
    if (a + b >= k) throw std::invalid_argument("variance proxies need a + b < k");
    const MatrixPolynomial xk = level_component(mf, k, dists);
    const int d = source_d(mf), dp = source_dp(mf);
    const RecursionLevel L = build_level_from_component(xk, k, a, b, dists, d, dp);
    LevelMoments m;
    m.F_b1 = mean_schatten(build_level_from_component(xk, k, a, b + 1, dists, d, dp), dists, t, true);
    m.F_a1 = mean_schatten(build_level_from_component(xk, k, a + 1, b, dists, d, dp), dists, t, true);
    for (auto& c : m.mixed) c = CheckResult{};
    m.u_split.slack = m.v_vs_d2.slack = INFINITY;
    m.min_proxy_eigen = 0.0;
    if (L.G.is_zero()) {
        m.u_split.slack = m.v_vs_d2.slack = 0.0;
        return m;
    }
    const MatrixPolynomial K = kernel_matrix(L, dists);
    const LevelEvaluator ev(L, &K);
    const double n = static_cast<double>(L.n_slots);
    double mixed_sum[3] = {0, 0, 0};
    for_each_configuration(dists, [&](const std::vector<double>& z, double prob) {
        const VarianceProxies P = proxies_at(ev, z, dists);
        const Eigen::VectorXd D = ev.D(z);
        const Eigen::MatrixXd Fb = D.asDiagonal() * ev.G_bar(z) * D.asDiagonal();
        m.F += prob * schatten_sym(Fb, 2 * t);
        m.U += prob * schatten_sym(P.U, t);
        m.V += prob * schatten_sym(P.V, t);
        m.D1 += prob * schatten_sym(P.D1p, t);
        m.D2 += prob * schatten_sym(P.D2p, t);
        m.D3 += prob * schatten_sym(P.D3p, t);
        for (int j = 0; j < 3; ++j) {
            const double s = kMixedScales[j];
            mixed_sum[j] += prob * schatten_sym(s * P.U + P.V / s, t);
        }
        m.u_split.slack = std::min(m.u_split.slack, loewner_slack(P.U, 3.0 * (P.D1p + P.D2p + P.D3p)));
        m.v_vs_d2.slack = std::min(m.v_vs_d2.slack, loewner_slack(P.V, n * n * P.D2p));
        for (const Eigen::MatrixXd* x : {&P.U, &P.V, &P.D1p, &P.D2p, &P.D3p})
            m.min_proxy_eigen = std::min(m.min_proxy_eigen, min_eigenvalue(*x) / std::max(1.0, max_abs(*x)));
    });
    const double pre = std::pow((2.0 * t - 1.0) / 4.0, t);
    for (int j = 0; j < 3; ++j) {
        m.mixed[j].lhs = m.F;
        m.mixed[j].rhs = pre * mixed_sum[j];
        m.mixed[j].slack = scalar_slack(m.mixed[j].lhs, m.mixed[j].rhs);
        m.mixed[j].holds = m.mixed[j].slack >= kSlackTol;
    }
    m.u_split.holds = m.u_split.slack >= kSlackTol;
    m.v_vs_d2.holds = m.v_vs_d2.slack >= kSlackTol;
    return m;
}

MinimalConstants minimal_constants(const LevelMoments& m, int n_slots, int t, int d, int dp) {
    const double S = m.F_b1 + m.F_a1;
    const double n = n_slots;
    MinimalConstants c;
    c.step = root_ratio(m.F, S, t) / (static_cast<double>(t) * t * d * dp * dp);
    c.d2 = n * root_ratio(m.D2, S, t) / dp;
    c.v = root_ratio(m.V, S, t) / (n * dp);
    c.d1 = n * root_ratio(m.D1, m.F, t) / (static_cast<double>(d) * dp);
    c.d3 = n * root_ratio(m.D3, m.F, t) / dp;
    return c;
}

InequalityResult verify_lemma_6_9(const RecursionLevel& level, const DistList& dists, int t, double constant_C) {
    if (level.a + level.b >= level.k) throw std::invalid_argument("level step needs a + b < k");
    const double lhs = mean_schatten(level, dists, t, true);
    const auto next = [&](int a, int b) {
        return mean_schatten(assemble_level(level.component, level.k, a, b, dists, level.d, level.dp), dists, t, true);
    };
    const double S = next(level.a, level.b + 1) + next(level.a + 1, level.b);
    const double factor = std::pow(constant_C * t * t * level.d * level.dp * level.dp, t);
    return make_result(lhs, factor * S);
}

namespace {

// Σ_{a+b=s} E‖F_{s,a,b}‖_{2t}^{2t} for s = 1..d_p, plus the per-(a,b) pieces.
std::vector<BoundTerm> general_terms(const MatrixPolynomial& mf, int t, const DistList& dists) {
    const auto levels = decompose_levels(mf, dists);
    const int d = source_d(mf), dp = source_dp(mf);
    std::vector<BoundTerm> out;
    for (int s = 1; s <= static_cast<int>(levels.size()); ++s)
        for (int a = s; a >= 0; --a) {
            const RecursionLevel L = build_level_from_component(levels[s - 1], s, a, s - a, dists, d, dp);
            out.push_back(BoundTerm{a, s - a, 0.0, mean_schatten(L, dists, t, false), 0.0});
        }
    return out;
}

}  // namespace

BoundBreakdown general_bound(const MatrixPolynomial& mf, int t, const DistList& dists, double constant_C) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (!(constant_C > 0)) throw std::invalid_argument("constant C must be positive");
    const double base = constant_C * t * t * source_d(mf) * std::pow(source_dp(mf), 4);
    BoundBreakdown out;
    for (BoundTerm term : general_terms(mf, t, dists)) {
        term.factor = std::pow(base, static_cast<double>(term.a + term.b) * t);
        term.contribution = term.factor * term.schatten;
        out.total += term.contribution;
        out.terms.push_back(term);
    }
    return out;
}

double general_bound_minimal_C(const MatrixPolynomial& mf, int t, const DistList& dists) {
    const int n = static_cast<int>(dists.size());
    const double lhs = exact_centered_moment(mf, n, t, dists);
    if (lhs <= 1e-12) return 0.0;
    const auto terms = general_terms(mf, t, dists);
    const double unit = static_cast<double>(t) * t * source_d(mf) * std::pow(source_dp(mf), 4);
    auto rhs = [&](double C) {
        double total = 0.0;
        for (auto& term : terms) total += std::pow(C * unit, static_cast<double>(term.a + term.b) * t) * term.schatten;
        return total;
    };
    double hi = 1.0;
    for (int guard = 0; rhs(hi) < lhs; ++guard) {
        if (guard > 2000) return std::numeric_limits<double>::infinity();
        hi *= 2.0;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rhs(mid) < lhs ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace gmlab
