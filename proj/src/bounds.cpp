#include "gmlab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace gmlab {

double GraphBound::value() const { return std::exp(log_value); }

namespace {

void check_n(double n) {
    if (!(n >= 1)) throw std::invalid_argument("n must be >= 1");
}

GraphBound edgeless(const Shape& s, double n, double t) {
    GraphBound b;
    b.branch = "edgeless";
    b.t = t;
    b.isolated = isolated_middle_vertices(s);
    b.separator.set = s.u_and_v();
    b.separator.size = static_cast<int>(b.separator.set.size());
    const double ln = std::log(n);
    const double k = b.separator.size, V = s.n_vertices(), I = b.isolated.size();
    b.log_value = k * ln + t * (V - k + I) * ln;
    b.dominant = 0.5 * (V - k + I) * ln;
    b.dominant_exponent = 0.5 * (V - k + I);
    return b;
}

}  // namespace

GraphBound dense_bound(const Shape& s, double n, int t, const BoundConstants& c) {
    check_n(n);
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (s.n_edges() == 0) return edgeless(s, n, t);
    GraphBound b;
    b.branch = "dense";
    b.t = t;
    b.separator = min_vertex_separator(s);
    b.isolated = isolated_middle_vertices(s);
    const double ln = std::log(n), E = s.n_edges(), V = s.n_vertices();
    const double expo = V - b.separator.size + static_cast<double>(b.isolated.size());
    b.log_value = t * E * std::log(c.C) + V * ln + t * E * std::log(static_cast<double>(t)) + 2.0 * t * E * std::log(E) +
                  t * expo * ln;
    b.dominant = 0.5 * expo * ln;
    b.dominant_exponent = 0.5 * expo;
    return b;
}

GraphBound dense_highprob(const Shape& s, double n, double eps, const BoundConstants& c) {
    check_n(n);
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
    const double L = std::log(std::pow(n, s.n_vertices()) / eps);
    const double t = 0.5 * L;
    if (s.n_edges() == 0) {
        // Markov on the edgeless moment bound at the same t.
        GraphBound b = edgeless(s, n, t);
        b.log_value = (b.log_value - std::log(eps)) / (2.0 * t);
        return b;
    }
    GraphBound b = dense_bound(s, n, 1, c);
    b.t = t;
    const double E = s.n_edges();
    b.log_value = E * std::log(c.C * E * L) + b.dominant;
    return b;
}

GraphBound sparse_bound(const Shape& s, double n, double p, int t, const BoundConstants& c) {
    check_n(n);
    if (t < 2 || t % 2 != 0) throw std::invalid_argument("sparse bound needs an even t >= 2");
    if (!(p > 0 && p <= 0.5)) throw std::invalid_argument("p must lie in (0, 1/2]");
    if (s.n_edges() == 0) return edgeless(s, n, t);
    GraphBound b;
    b.branch = "sparse";
    b.t = t;
    b.separator = weighted_separator(s, n, p);
    b.isolated = isolated_middle_vertices(s);
    const double ln = std::log(n), E = s.n_edges(), V = s.n_vertices(), I = b.isolated.size();
    const double log_l = std::log((1.0 - p) / p);
    const double inner = b.separator.edges_inside * log_l + (V - b.separator.size + I) * ln;
    b.log_value = V * ln + t * V * std::log(V) + t * E * std::log(c.C * std::pow(t, 3) * std::pow(E, 5)) + t * inner;
    b.dominant = 0.5 * inner;
    b.dominant_exponent = b.dominant / ln;
    return b;
}

GraphBound sparse_highprob(const Shape& s, double n, double p, double eps, const BoundConstants& c) {
    check_n(n);
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
    if (s.n_edges() == 0) return dense_highprob(s, n, eps, c);
    GraphBound b = sparse_bound(s, n, p, 2, c);
    const double L = std::log(std::pow(n, s.n_vertices()) / eps);
    const double E = s.n_edges(), V = s.n_vertices();
    b.t = 0.5 * L;
    b.log_value = 0.5 * V * std::log(V) + 0.5 * E * std::log(c.C * std::pow(E, 5) * std::pow(L, 3)) + b.dominant;
    return b;
}

}  // namespace gmlab
