#pragma once

#include <cstdint>
#include <vector>

#include "gmlab/matrix.hpp"

namespace gmlab {

// F = Σ_{k < n^c} A_k⊗A_k − E[·] for i.i.d. uniform ±1 matrices A_k of side N = n^d.
// Variable a_{k,i,j} sits in slot (k·N + i)·N + j; rows are (i1,i2), columns (j1,j2).
struct TensorNetwork {
    int n = 0, c = 1, d = 1;
    int64_t side() const;     // N
    int64_t copies() const;   // n^c
    int64_t dim() const;      // N²
};

void check_tensornet_budget(const TensorNetwork& tn);

// Matrix-free F for one draw: x ↦ Σ_k vec(A_k X A_kᵀ) − n^c·(Σ_j X[j,j])·vec(I).
LinearOperator tensornet_operator(const TensorNetwork& tn, const std::vector<Eigen::MatrixXd>& A);
std::vector<Eigen::MatrixXd> sample_tensornet(const TensorNetwork& tn, uint64_t seed);

// Entries of F as polynomials in the a_{k,i,j}; small n only.
MatrixPolynomial tensornet_polynomial(const TensorNetwork& tn);

struct TensorNetSample {
    double norm = 0.0;
    uint64_t seed = 0;
};

struct TensorNetReport {
    TensorNetwork tn;
    std::vector<TensorNetSample> samples;
    double mean_norm = 0.0;
    double ratio = 0.0;           // mean ‖F‖ / n^{(2d+c)/2}
    double envelope_ratio = 0.0;  // mean ‖F‖ / (n^{(2d+c)/2}·log n)
};

TensorNetReport tensornet_estimate(const TensorNetwork& tn, int samples, uint64_t seed);

struct TensorNetSchatten {
    int t = 1;
    double ef20 = 0.0, ef11 = 0.0, ef02 = 0.0;  // explicit ‖E F_{a,b}‖_{2t}^{2t}
    double formula = 0.0;                      // n^{c+4d}·n^{t(2d+c)}
    double formula11 = 0.0;                    // 2^{2t+1}·formula
};

TensorNetSchatten tensornet_schatten(const TensorNetwork& tn, int t);

}  // namespace gmlab
