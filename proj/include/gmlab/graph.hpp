#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gmlab/matrix.hpp"
#include "gmlab/polynomial.hpp"
#include "gmlab/shape.hpp"

namespace gmlab {

// 0-based slot of the unordered pair {i, j}, i ≠ j, among binom(n, 2) edge variables.
int64_t edge_slot(int i, int j, int n);

// One draw of all binom(n,2) edge variables.
struct EdgeSample {
    int n = 0;
    Eigen::MatrixXd G;  // symmetric, zero diagonal
    std::vector<double> slot_values() const;
};

EdgeSample sample_edges(int n, const VariableDistribution& dist, uint64_t seed);
EdgeSample edges_from_slots(int n, const std::vector<double>& values);

// Injective k-tuples over [n] in lexicographic order, stored by flat offset in [n]^k.
class TupleIndex {
public:
    TupleIndex(int n, int k);
    int64_t size() const { return static_cast<int64_t>(offsets_.size()); }
    int64_t offset(int64_t row) const { return offsets_[row]; }
    int64_t row_of(int64_t flat) const;  // -1 if the tuple is not injective
    std::vector<int> tuple(int64_t row) const;
    int n() const { return n_; }
    int k() const { return k_; }

private:
    int n_, k_;
    std::vector<int64_t> offsets_;
};

inline constexpr int64_t kMaterializeCap = 4'000'000;  // rows × cols for dense materialization
inline constexpr int64_t kTensorCap = int64_t{1} << 27;  // elements of any contraction intermediate

// Sum over injective realizations, one at a time.
NumericMatrix build_graph_matrix(const Shape& s, const EdgeSample& g);

// Matrix-free operator over the injective row/column tuples.
LinearOperator graph_operator(const Shape& s, const EdgeSample& g);

// Entries are polynomials in the edge slots.
MatrixPolynomial as_matrix_polynomial(const Shape& s, int n);

struct NormStats {
    std::vector<double> norms;
    std::vector<uint64_t> seeds;
    std::vector<double> elapsed_ms;
    double mean = 0.0, std_error = 0.0;
};

NormStats empirical_norm(const Shape& s, int n, double p, int samples, uint64_t seed, bool timing = false);

struct ScalingFit {
    double slope = 0.0, intercept = 0.0, residual = 0.0;
};
ScalingFit fit_log_log(const std::vector<double>& xs, const std::vector<double>& ys);

// p as a function of n: fixed value or n^{−θ}.
struct PRule {
    enum Kind { Fixed, Power } kind = Fixed;
    double value = 0.5;
    double at(int n) const;
    std::string to_string() const;
};
PRule parse_p_rule(const std::string& text);

}  // namespace gmlab
