#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gmlab/bounds.hpp"
#include "gmlab/polynomial.hpp"
#include "gmlab/shape.hpp"

namespace gmlab {

// L for which E|Z−EZ|^i ≤ i·L·E|Z−EZ|^{i−1} for all i ≤ i_max. The p-biased law uses √((1−p)/p).
double central_moment_param(const VariableDistribution& d, int i_max = 20);
// min over i ≤ i_max of (i·L·E|Z−EZ|^{i−1} − E|Z−EZ|^i), normalized by the larger side.
double central_moment_slack(const VariableDistribution& d, double L, int i_max = 20);

struct HypergraphPoly {
    std::vector<std::pair<std::vector<int>, double>> edges;  // sorted vertex set, weight

    static HypergraphPoly from_polynomial(const Polynomial& f);  // f must be multilinear
    Polynomial to_polynomial() const;
    void add(std::vector<int> vertices, double weight);  // merges duplicate vertex sets
    int degree() const;
    int max_slot() const;
};

double mu_r(const HypergraphPoly& f, const DistList& dists, int r);
double mu_r_brute(const HypergraphPoly& f, const DistList& dists, int r);

double exact_variance(const HypergraphPoly& f, const DistList& dists);  // closed form for independent slots
double exact_central_abs_moment(const HypergraphPoly& f, const DistList& dists, int t);  // by enumeration

double ss_variance_bound(const HypergraphPoly& f, const DistList& dists, double L);
double ss_moment_bound(const HypergraphPoly& f, const DistList& dists, double L, int t, double R4);
// Smallest R4 ≥ 1 for which the moment bound covers the exact central moment.
double ss_minimal_R4(const HypergraphPoly& f, const DistList& dists, double L, int t);

bool is_simple_shape(const Shape& s);

struct SimpleShapeBound {
    double log_value = 0.0;     // natural log of the bound on E‖M‖_{2t}^{2t}
    double A = 0.0;             // max_S ((1−p)/p)^{|E(S)|}·n^{|V|−|S|}
    double A_powered = 0.0;     // the same maximum with every factor raised to t
    std::vector<int> maximizer;
};

SimpleShapeBound simple_shape_bound(const Shape& s, double n, double p, int t, const BoundConstants& c = {});

}  // namespace gmlab
