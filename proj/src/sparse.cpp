#include "gmlab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "gmlab/combinatorics.hpp"
#include "gmlab/estimation.hpp"

namespace gmlab {

double central_moment_param(const VariableDistribution& d, int i_max) {
    if (d.is_p_biased()) return std::sqrt((1.0 - d.p()) / d.p());
    double L = 0.0;
    for (int i = 1; i <= i_max; ++i) {
        const double prev = d.abs_central_moment(i - 1);
        if (prev > 0) L = std::max(L, d.abs_central_moment(i) / (i * prev));
    }
    return L;
}

double central_moment_slack(const VariableDistribution& d, double L, int i_max) {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= i_max; ++i) {
        const double lhs = d.abs_central_moment(i), rhs = i * L * d.abs_central_moment(i - 1);
        worst = std::min(worst, scalar_slack(lhs, rhs));
    }
    return worst;
}

void HypergraphPoly::add(std::vector<int> vertices, double weight) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("hyperedge repeats a vertex");
    for (auto& [v, w] : edges)
        if (v == vertices) {
            w += weight;
            return;
        }
    edges.emplace_back(std::move(vertices), weight);
}

HypergraphPoly HypergraphPoly::from_polynomial(const Polynomial& f) {
    if (!f.is_multilinear()) throw std::invalid_argument("hypergraph polynomials are multilinear");
    HypergraphPoly h;
    for (auto& [alpha, c] : f.terms()) h.add(alpha.support(), c);
    return h;
}

Polynomial HypergraphPoly::to_polynomial() const {
    Polynomial p;
    for (auto& [v, w] : edges) {
        std::vector<std::pair<int, int>> e;
        for (int x : v) e.emplace_back(x, 1);
        p.add_term(MultiIndex(e), w);
    }
    return p;
}

int HypergraphPoly::degree() const {
    int d = 0;
    for (auto& [v, w] : edges)
        if (w != 0.0) d = std::max(d, static_cast<int>(v.size()));
    return d;
}

int HypergraphPoly::max_slot() const {
    int m = -1;
    for (auto& [v, w] : edges)
        if (!v.empty()) m = std::max(m, v.back());
    return m;
}

namespace {

double abs_mean(const DistList& dists, int v) {
    double s = 0.0;
    for (auto& [x, p] : dists.at(v).support()) s += p * std::abs(x);
    return s;
}

double mu_at(const HypergraphPoly& f, const DistList& dists, const std::vector<int>& S) {
    double total = 0.0;
    for (auto& [v, w] : f.edges) {
        if (!std::includes(v.begin(), v.end(), S.begin(), S.end())) continue;
        double term = std::abs(w);
        for (int x : v)
            if (!std::binary_search(S.begin(), S.end(), x)) term *= abs_mean(dists, x);
        total += term;
    }
    return total;
}

}  // namespace

double mu_r(const HypergraphPoly& f, const DistList& dists, int r) {
    if (r < 0) throw std::invalid_argument("r must be >= 0");
    std::set<std::vector<int>> candidates;
    for (auto& [v, w] : f.edges) for_each_k_subset(v, r, [&](const std::vector<int>& S) { candidates.insert(S); });
    double best = 0.0;
    for (auto& S : candidates) best = std::max(best, mu_at(f, dists, S));
    return best;
}

double mu_r_brute(const HypergraphPoly& f, const DistList& dists, int r) {
    std::vector<int> all(dists.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    double best = 0.0;
    for_each_k_subset(all, r, [&](const std::vector<int>& S) { best = std::max(best, mu_at(f, dists, S)); });
    return best;
}

double exact_variance(const HypergraphPoly& f, const DistList& dists) {
    // Cov of two monomials: Π_{h∩h'} E[Y²]·Π_{hΔh'} E[Y] − Π_h E[Y]·Π_{h'} E[Y].
    double var = 0.0;
    for (auto& [a, wa] : f.edges)
        for (auto& [b, wb] : f.edges) {
            double joint = 1.0, sep = 1.0;
            for (int x : a) {
                const double m1 = dists.at(x).moment(1);
                sep *= m1;
                joint *= std::binary_search(b.begin(), b.end(), x) ? dists.at(x).moment(2) : m1;
            }
            for (int x : b) {
                const double m1 = dists.at(x).moment(1);
                sep *= m1;
                if (!std::binary_search(a.begin(), a.end(), x)) joint *= m1;
            }
            var += wa * wb * (joint - sep);
        }
    return std::max(var, 0.0);
}

double exact_central_abs_moment(const HypergraphPoly& f, const DistList& dists, int t) {
    const Polynomial p = f.to_polynomial();
    const double mean = expectation(p, dists);
    return exact_expectation<double>(dists, [&](const std::vector<double>& z) { return std::pow(std::abs(p.eval(z) - mean), t); });
}

double ss_variance_bound(const HypergraphPoly& f, const DistList& dists, double L) {
    const int dp = f.degree();
    if (dp == 0) return 0.0;
    const double mu0 = mu_r(f, dists, 0);
    double best = 0.0;
    for (int r = 1; r <= dp; ++r) best = std::max(best, mu0 * mu_r(f, dists, r) * std::pow(4.0 * L, r));
    return 2.0 * dp * std::pow(4.0, dp) * best;
}

double ss_moment_bound(const HypergraphPoly& f, const DistList& dists, double L, int t, double R4) {
    if (t < 2 || t % 2 != 0) throw std::invalid_argument("moment bound needs an even t >= 2");
    if (R4 < 1.0) throw std::invalid_argument("R4 must be >= 1");
    const int dp = f.degree();
    if (dp == 0) return 0.0;
    const double r4 = std::pow(R4, dp);
    double best = std::pow(std::sqrt(t * r4 * exact_variance(f, dists)), t);
    for (int r = 1; r <= dp; ++r) best = std::max(best, std::pow(std::pow(t, r) * r4 * std::pow(L, r) * mu_r(f, dists, r), t));
    return best;
}

double ss_minimal_R4(const HypergraphPoly& f, const DistList& dists, double L, int t) {
    const double lhs = exact_central_abs_moment(f, dists, t);
    if (lhs <= ss_moment_bound(f, dists, L, t, 1.0) * (1.0 + 1e-12)) return 1.0;
    double lo = 1.0, hi = 2.0;
    for (int guard = 0; ss_moment_bound(f, dists, L, t, hi) < lhs; ++guard) {
        if (guard > 2000) return std::numeric_limits<double>::infinity();
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ss_moment_bound(f, dists, L, t, mid) < lhs ? lo : hi) = mid;
    }
    return hi;
}

bool is_simple_shape(const Shape& s) {
    auto in = [](const std::vector<int>& t, int v) { return std::find(t.begin(), t.end(), v) != t.end(); };
    for (int v = 0; v < s.n_vertices(); ++v)
        if (!in(s.U, v) && !in(s.V, v)) return false;
    for (auto [a, b] : s.edges)
        if (!(in(s.U, a) && in(s.U, b)) && !(in(s.V, a) && in(s.V, b))) return false;
    return true;
}

SimpleShapeBound simple_shape_bound(const Shape& s, double n, double p, int t, const BoundConstants& c) {
    if (!is_simple_shape(s)) throw std::invalid_argument("shape '" + s.name + "' is not simple");
    if (t < 2 || t % 2 != 0) throw std::invalid_argument("simple-shape bound needs an even t >= 2");
    if (!(p > 0 && p <= 0.5)) throw std::invalid_argument("p must lie in (0, 1/2]");
    const std::vector<int> base = s.u_and_v();
    std::vector<int> others;
    for (int v = 0; v < s.n_vertices(); ++v)
        if (!std::binary_search(base.begin(), base.end(), v)) others.push_back(v);
    const double log_l = std::log((1.0 - p) / p), ln = std::log(n), V = s.n_vertices(), E = s.n_edges();
    double best = -std::numeric_limits<double>::infinity();
    SimpleShapeBound out;
    for (int k = 0; k <= static_cast<int>(others.size()); ++k)
        for_each_k_subset(others, k, [&](const std::vector<int>& extra) {
            std::vector<int> S = base;
            S.insert(S.end(), extra.begin(), extra.end());
            std::sort(S.begin(), S.end());
            const double val = edges_within(s, S) * log_l + (V - S.size()) * ln;
            if (val > best + 1e-12 * std::max(1.0, std::abs(val))) {
                best = val;
                out.maximizer = S;
            }
        });
    out.A = std::exp(best);
    out.A_powered = std::exp(t * best);
    out.log_value = V * ln + t * E * std::log(c.C * t) + t * V * std::log(V) + t * best;
    return out;
}

}  // namespace gmlab
