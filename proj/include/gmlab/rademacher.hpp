#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gmlab/estimation.hpp"
#include "gmlab/matrix.hpp"

namespace gmlab {

struct DerivativeMatrix {
    int a = 0, b = 0;
    MatrixPolynomial matrix;
};

// Rows ℐ×binom([n],a), columns 𝒥×binom([n],b); entry ∇_{α+β} F[I,J] for
// disjoint slot sets. Only keys with a nonzero entry are materialized.
DerivativeMatrix build_F_ab(const MatrixPolynomial& mf, int a, int b);

struct BoundTerm {
    int a = 0, b = 0;
    double factor = 0.0;    // the (·)^{(a+b)t} prefactor
    double schatten = 0.0;  // ‖E F_{a,b}‖ or E‖F_{a+b,a,b}‖, power 2t
    double contribution = 0.0;
};

struct BoundBreakdown {
    double total = 0.0;
    std::vector<BoundTerm> terms;
};

BoundBreakdown rademacher_bound(const MatrixPolynomial& mf, int t);

DistList rademacher_dists(int n_slots);

// E‖F − EF‖_{2t}^{2t} by enumerating {−1,1}ⁿ.
double exact_centered_moment(const MatrixPolynomial& mf, int n_slots, int t, const DistList& dists);
// Same quantity by an independent path: per-entry evaluation, empirical mean
// over the enumeration, singular values.
double exact_centered_moment_direct(const MatrixPolynomial& mf, int n_slots, int t, const DistList& dists);

struct InequalityResult {
    double lhs = 0.0, rhs = 0.0, slack = 0.0;
    bool holds = true;
};

InequalityResult verify_theorem_1_2(const MatrixPolynomial& mf, int n_slots, int t);
// Matrix Efron-Stein moment inequality with V = ½ Σ_i E[(H − H^{(i)})² | Z].
InequalityResult verify_matrix_efron_stein(const MatrixPolynomial& mf, int n_slots, int t, const DistList& dists);
// Worst (smallest slack) over all levels a+b ≤ d_p.
InequalityResult verify_level_recursion(const MatrixPolynomial& mf, int n_slots, int t);

// Max entry-wise residual, over all (a,b) and assignments, of
//   Σ_i E[(F_{a,b} − F_{a,b}^{(i)})(…)ᵀ | Z] = 2(b+1) F_{a,b+1} F_{a,b+1}ᵀ
// and its transposed counterpart with 2(a+1).
double resample_variance_residual(const MatrixPolynomial& mf, int n_slots);

}  // namespace gmlab
