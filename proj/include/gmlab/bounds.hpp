#pragma once

#include <string>
#include <vector>

#include "gmlab/shape.hpp"

namespace gmlab {

struct BoundConstants {
    double C = 1.0;
    double R4 = 1.0;
};

struct GraphBound {
    std::string branch;        // "dense", "edgeless" or "sparse"
    double log_value = 0.0;    // natural log of the bound
    double t = 0.0;            // moment parameter used
    double dominant = 0.0;     // natural log of the n-dependent factor governing ‖M‖
    double dominant_exponent = 0.0;  // that factor as a power of n
    SeparatorResult separator;
    std::vector<int> isolated;
    double value() const;
};

// E‖M − EM‖_{2t}^{2t} for t ≥ 1 (the edgeless case bounds E‖M‖_{2t}^{2t}).
GraphBound dense_bound(const Shape& s, double n, int t, const BoundConstants& c = {});
// θ with ‖M‖ ≤ θ w.p. 1 − ε, using t = ½ log(n^{|V|}/ε).
GraphBound dense_highprob(const Shape& s, double n, double eps, const BoundConstants& c = {});
// Even t ≥ 2, 0 < p ≤ 1/2. Edgeless shapes are redirected to the edgeless bound.
GraphBound sparse_bound(const Shape& s, double n, double p, int t, const BoundConstants& c = {});
GraphBound sparse_highprob(const Shape& s, double n, double p, double eps, const BoundConstants& c = {});

}  // namespace gmlab
