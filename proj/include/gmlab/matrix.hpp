#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmlab/polynomial.hpp"

namespace gmlab {

// Row/column label. `base` is an opaque tuple (e.g. a boundary tuple), `deriv`
// a sorted set of slots, and (alpha, gamma) an optional pair for the
// K-indexed matrices of the general recursion.
struct IndexKey {
    std::vector<int> base;
    std::vector<int> deriv;
    bool has_pair = false;
    MultiIndex alpha;
    BooleanMask gamma;

    static IndexKey plain(std::vector<int> base) { return IndexKey{std::move(base), {}, false, {}, {}}; }
    std::string to_string() const;

    auto operator<=>(const IndexKey&) const = default;
    bool operator==(const IndexKey&) const = default;
};

class MatrixPolynomial {
public:
    MatrixPolynomial() = default;
    MatrixPolynomial(std::vector<IndexKey> rows, std::vector<IndexKey> cols);

    // Build from keyed entries; universes are the keys that occur (plus any
    // extra keys supplied).
    static MatrixPolynomial from_entries(const std::map<std::pair<IndexKey, IndexKey>, Polynomial>& entries,
                                         std::vector<IndexKey> extra_rows = {},
                                         std::vector<IndexKey> extra_cols = {});

    const std::vector<IndexKey>& rows() const { return rows_; }
    const std::vector<IndexKey>& cols() const { return cols_; }
    const std::map<std::pair<int, int>, Polynomial>& entries() const { return entries_; }
    int n_rows() const { return static_cast<int>(rows_.size()); }
    int n_cols() const { return static_cast<int>(cols_.size()); }

    void set(int r, int c, Polynomial p);
    const Polynomial* entry(int r, int c) const;
    std::optional<int> row_index(const IndexKey& k) const;
    std::optional<int> col_index(const IndexKey& k) const;

    int total_degree() const;
    int max_var_degree() const;
    int max_slot() const;
    bool is_multilinear() const;
    bool is_zero() const { return entries_.empty(); }

    MatrixPolynomial map_entries(const std::function<Polynomial(const Polynomial&)>& fn) const;
    MatrixPolynomial transpose() const;

private:
    std::vector<IndexKey> rows_, cols_;
    std::map<std::pair<int, int>, Polynomial> entries_;
};

// Flattened evaluator. Rows/cols are mapped into caller-chosen universes so
// that matrices from different levels can be compared on common keys; keys
// absent from a universe are rejected.
class CompiledMatrix {
public:
    CompiledMatrix() = default;
    explicit CompiledMatrix(const MatrixPolynomial& m);
    CompiledMatrix(const MatrixPolynomial& m, const std::vector<IndexKey>& row_universe,
                   const std::vector<IndexKey>& col_universe);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Eigen::MatrixXd eval(const std::vector<double>& z) const;
    void eval_into(const std::vector<double>& z, Eigen::MatrixXd& out) const;

private:
    void compile(const MatrixPolynomial& m, const std::vector<int>& row_map, const std::vector<int>& col_map);
    struct Term {
        int row, col;
        double coef;
        uint32_t begin, end;  // into factors_
    };
    int rows_ = 0, cols_ = 0;
    std::vector<Term> terms_;
    std::vector<std::pair<int, int>> factors_;
};

std::vector<IndexKey> union_keys(const std::vector<IndexKey>& a, const std::vector<IndexKey>& b);

// Dense or sparse storage, chosen by fill ratio (dense above 0.25).
class NumericMatrix {
public:
    NumericMatrix() = default;
    explicit NumericMatrix(Eigen::MatrixXd dense);
    explicit NumericMatrix(Eigen::SparseMatrix<double> sparse);
    static NumericMatrix from_dense_auto(const Eigen::MatrixXd& m);

    int rows() const;
    int cols() const;
    bool is_dense() const { return is_dense_; }
    Eigen::MatrixXd dense() const;
    const Eigen::SparseMatrix<double>& sparse() const { return sparse_; }

    // Triplet CSV (row_key, col_key, value); zero entries are skipped.
    std::string to_csv(const std::vector<IndexKey>& row_keys, const std::vector<IndexKey>& col_keys) const;

private:
    bool is_dense_ = true;
    Eigen::MatrixXd dense_;
    Eigen::SparseMatrix<double> sparse_;
};

inline constexpr double kDenseFillThreshold = 0.25;

NumericMatrix evaluate(const MatrixPolynomial& mf, const std::vector<double>& z);
NumericMatrix expectation_matrix(const MatrixPolynomial& mf, const DistList& dists);
Eigen::MatrixXd hermitian_dilation(const Eigen::MatrixXd& m);

enum class SchattenPath { TracePower, Singular };
double schatten_2t(const Eigen::MatrixXd& m, int t, SchattenPath path = SchattenPath::TracePower);
// ‖X‖_t^t = Σ|λ|^t for symmetric X.
double schatten_sym(const Eigen::MatrixXd& sym, int t);
double min_eigenvalue(const Eigen::MatrixXd& sym);

struct LinearOperator {
    int64_t rows = 0, cols = 0;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> apply;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> apply_transpose;

    static LinearOperator from_dense(const Eigen::MatrixXd& m);
    static LinearOperator from_sparse(const Eigen::SparseMatrix<double>& m);
};

enum class SpectralMethod { Lanczos, Power };

struct SpectralOptions {
    double tol = 1e-6;
    int max_iters = 1000;
    uint64_t seed = 1;
    SpectralMethod method = SpectralMethod::Lanczos;
};

struct SpectralResult {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Largest singular value. Works on the Gram operator of the smaller side,
// from a seeded start vector.
SpectralResult spectral_norm(const LinearOperator& op, const SpectralOptions& opts = {});
double spectral_norm_svd(const Eigen::MatrixXd& m);

}  // namespace gmlab
