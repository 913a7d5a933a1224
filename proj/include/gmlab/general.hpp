#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gmlab/estimation.hpp"
#include "gmlab/matrix.hpp"
#include "gmlab/rademacher.hpp"

namespace gmlab {

struct KIndex {
    MultiIndex alpha;
    BooleanMask gamma;
    auto operator<=>(const KIndex&) const = default;
    bool operator==(const KIndex&) const = default;
};

// Every (α, γ) with 1 ≤ |α|₁ ≤ dp over n slots, per-slot exponent ≤ dp, γ ≤ α.
// Includes α = 0. Only meant for small n.
std::vector<KIndex> enumerate_k_index(int n_slots, int dp);

// Diagonal scaling entry √E[Z^{2α(1−γ)}] · Z^{αγ}.
Polynomial scaling_entry(const MultiIndex& alpha, const BooleanMask& gamma, const DistList& dists);

// X_k for k = 1..d_p (index k−1); X_k collects the χ_α terms with |α|₀ = k.
std::vector<MatrixPolynomial> decompose_levels(const MatrixPolynomial& mf, const DistList& dists);

struct RecursionLevel {
    int k = 1, a = 0, b = 0;
    int n_slots = 0;
    int d = 1;   // max per-variable degree of the source matrix
    int dp = 1;  // total degree of the source matrix
    MatrixPolynomial component;  // X_k
    MatrixPolynomial G;
    MatrixPolynomial F;
    std::vector<Polynomial> d1, d2;  // diagonal scalings aligned with G rows / cols
};

RecursionLevel build_level(const MatrixPolynomial& mf, int k, int a, int b, const DistList& dists);
RecursionLevel build_level_from_component(const MatrixPolynomial& xk, int k, int a, int b, const DistList& dists,
                                          int d, int dp);

// Kernel built entry-wise from the inverse Laplacian, over 2n slots.
MatrixPolynomial kernel_matrix(const RecursionLevel& level, const DistList& dists);
// Closed form n/(k−a−b)·(G(z) − G(z')).
Eigen::MatrixXd inner_kernel(const RecursionLevel& level, const std::vector<double>& z, const std::vector<double>& zp);

// Test hook: perturbs one coefficient of every kernel built afterwards.
void set_kernel_fault_injection(bool on);
bool kernel_fault_injection();

struct VarianceProxies {
    Eigen::MatrixXd U, V, D1p, D2p, D3p;
};

// Evaluated level pieces at a point, with the dilation of G and D = diag(D₁, D₂).
class LevelEvaluator {
public:
    LevelEvaluator(const RecursionLevel& level, const MatrixPolynomial* kernel);
    Eigen::MatrixXd G(const std::vector<double>& z) const { return g_.eval(z); }
    Eigen::MatrixXd F(const std::vector<double>& z) const;
    Eigen::VectorXd D(const std::vector<double>& z) const;
    Eigen::MatrixXd G_bar(const std::vector<double>& z) const { return hermitian_dilation(g_.eval(z)); }
    Eigen::MatrixXd K(const std::vector<double>& z, const std::vector<double>& zp) const;
    int rows() const { return g_.rows(); }
    int cols() const { return g_.cols(); }

private:
    const RecursionLevel& level_;
    CompiledMatrix g_, k_;
    bool has_kernel_ = false;
};

VarianceProxies variance_proxies(const RecursionLevel& level, const MatrixPolynomial& kernel,
                                 const std::vector<double>& z, const DistList& dists);

// ---- exact-enumeration residuals (max absolute entry over all probes)

double kernel_antisymmetry_residual(const MatrixPolynomial& kernel, int n_slots);
double kernel_reproducing_residual(const RecursionLevel& level, const MatrixPolynomial& kernel, const DistList& dists);
double kernel_annihilation_residual(const RecursionLevel& level, const MatrixPolynomial& kernel, const DistList& dists);
double kernel_closed_form_residual(const RecursionLevel& level, const MatrixPolynomial& kernel, const DistList& dists);
double scaling_annihilation_residual(const RecursionLevel& level, const DistList& dists);
// Σ_{i,l}(Z_i^{2l} + E Z_i^{2l}) N N ᵀ against (b+1) F_{k,a,b+1} F_{k,a,b+1}ᵀ and the transposed relation.
double derivative_square_sum_residual(const MatrixPolynomial& xk, int k, int a, int b, const DistList& dists, int d,
                                      int dp);
double laplacian_eigen_residual(const Polynomial& f, const DistList& dists);
double coordinate_difference_residual(const Polynomial& f, const DistList& dists);
// Largest |χ coefficient| of a G entry outside level k−a−b.
double chi_support_violation(const RecursionLevel& level, const DistList& dists);
double decomposition_residual(const MatrixPolynomial& mf, const DistList& dists);

// ---- inequalities on one level

struct LevelMoments {
    double F = 0, F_b1 = 0, F_a1 = 0;  // E‖F̄‖_{2t}^{2t} at (k,a,b), (k,a,b+1), (k,a+1,b)
    double D1 = 0, D2 = 0, D3 = 0, V = 0, U = 0;  // E‖·‖_t^t
    CheckResult mixed[3];                       // s ∈ {0.1, 1, 10}
    CheckResult u_split;                        // U ⪯ 3(Δ₁+Δ₂+Δ₃), worst probe
    CheckResult v_vs_d2;                        // V ⪯ n² Δ₂, worst probe
    double min_proxy_eigen = 0;                 // smallest normalized eigenvalue of any proxy
};

inline constexpr double kMixedScales[3] = {0.1, 1.0, 10.0};

LevelMoments level_moments(const MatrixPolynomial& mf, int k, int a, int b, const DistList& dists, int t);

struct MinimalConstants {
    double step = 0;        // level-step constant C in (C t² d d_p²)^t
    double d2 = 0, v = 0, d1 = 0, d3 = 0;  // minimal prefactors for the four proxy bounds
};
MinimalConstants minimal_constants(const LevelMoments& m, int n_slots, int t, int d, int dp);

inline constexpr double kStatedD2 = 2.0, kStatedV = 2.0, kStatedD1 = 8.0, kStatedD3 = 4.0;

InequalityResult verify_lemma_6_9(const RecursionLevel& level, const DistList& dists, int t, double constant_C);

// E‖F − EF‖ against Σ_{a+b≥1}(C t² d d_p⁴)^{(a+b)t} E‖F_{a+b,a,b}‖_{2t}^{2t}.
BoundBreakdown general_bound(const MatrixPolynomial& mf, int t, const DistList& dists, double constant_C);
// Smallest C making the bound hold for this instance (0 when the left side vanishes).
double general_bound_minimal_C(const MatrixPolynomial& mf, int t, const DistList& dists);

}  // namespace gmlab
