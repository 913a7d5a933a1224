#include "gmlab/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gmlab/random.hpp"

namespace gmlab {

std::string IndexKey::to_string() const {
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
        return s;
    };
    std::string s = "(" + join(base) + ")";
    if (!deriv.empty()) s += "+d(" + join(deriv) + ")";
    if (has_pair) {
        s += "+a(";
        bool first = true;
        for (auto& [slot, e] : alpha.entries()) {
            s += (first ? "" : ";") + std::to_string(slot) + "^" + std::to_string(e);
            first = false;
        }
        s += ")+g(" + join(gamma.slots()) + ")";
    }
    return s;
}

// ---------------------------------------------------------------- MatrixPolynomial

MatrixPolynomial::MatrixPolynomial(std::vector<IndexKey> rows, std::vector<IndexKey> cols)
    : rows_(std::move(rows)), cols_(std::move(cols)) {}

MatrixPolynomial MatrixPolynomial::from_entries(const std::map<std::pair<IndexKey, IndexKey>, Polynomial>& entries,
                                                std::vector<IndexKey> extra_rows, std::vector<IndexKey> extra_cols) {
    std::vector<IndexKey> rows = std::move(extra_rows), cols = std::move(extra_cols);
    for (auto& [k, p] : entries) {
        if (p.is_zero()) continue;
        rows.push_back(k.first);
        cols.push_back(k.second);
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    MatrixPolynomial m(rows, cols);
    for (auto& [k, p] : entries) {
        if (p.is_zero()) continue;
        int r = static_cast<int>(std::lower_bound(rows.begin(), rows.end(), k.first) - rows.begin());
        int c = static_cast<int>(std::lower_bound(cols.begin(), cols.end(), k.second) - cols.begin());
        m.entries_[{r, c}] = p;
    }
    return m;
}

void MatrixPolynomial::set(int r, int c, Polynomial p) {
    if (r < 0 || r >= n_rows() || c < 0 || c >= n_cols()) throw std::out_of_range("matrix entry out of range");
    if (p.is_zero())
        entries_.erase({r, c});
    else
        entries_[{r, c}] = std::move(p);
}

const Polynomial* MatrixPolynomial::entry(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? nullptr : &it->second;
}

std::optional<int> MatrixPolynomial::row_index(const IndexKey& k) const {
    auto it = std::find(rows_.begin(), rows_.end(), k);
    if (it == rows_.end()) return std::nullopt;
    return static_cast<int>(it - rows_.begin());
}

std::optional<int> MatrixPolynomial::col_index(const IndexKey& k) const {
    auto it = std::find(cols_.begin(), cols_.end(), k);
    if (it == cols_.end()) return std::nullopt;
    return static_cast<int>(it - cols_.begin());
}

int MatrixPolynomial::total_degree() const {
    int d = 0;
    for (auto& [_, p] : entries_) d = std::max(d, p.total_degree());
    return d;
}

int MatrixPolynomial::max_var_degree() const {
    int d = 0;
    for (auto& [_, p] : entries_) d = std::max(d, p.max_var_degree());
    return d;
}

int MatrixPolynomial::max_slot() const {
    int s = -1;
    for (auto& [_, p] : entries_) s = std::max(s, p.max_slot());
    return s;
}

bool MatrixPolynomial::is_multilinear() const {
    for (auto& [_, p] : entries_)
        if (!p.is_multilinear()) return false;
    return true;
}

MatrixPolynomial MatrixPolynomial::map_entries(const std::function<Polynomial(const Polynomial&)>& fn) const {
    MatrixPolynomial m(rows_, cols_);
    for (auto& [k, p] : entries_) {
        Polynomial q = fn(p);
        if (!q.is_zero()) m.entries_[k] = std::move(q);
    }
    return m;
}

MatrixPolynomial MatrixPolynomial::transpose() const {
    MatrixPolynomial m(cols_, rows_);
    for (auto& [k, p] : entries_) m.entries_[{k.second, k.first}] = p;
    return m;
}

std::vector<IndexKey> union_keys(const std::vector<IndexKey>& a, const std::vector<IndexKey>& b) {
    std::vector<IndexKey> u = a;
    u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

// ---------------------------------------------------------------- CompiledMatrix

namespace {

std::vector<int> key_map(const std::vector<IndexKey>& from, const std::vector<IndexKey>& to) {
    std::vector<int> out(from.size());
    std::map<IndexKey, int> pos;
    for (int i = 0; i < static_cast<int>(to.size()); ++i) pos.emplace(to[i], i);
    for (size_t i = 0; i < from.size(); ++i) {
        auto it = pos.find(from[i]);
        out[i] = it == pos.end() ? -1 : it->second;
    }
    return out;
}

}  // namespace

CompiledMatrix::CompiledMatrix(const MatrixPolynomial& m) {
    std::vector<int> r(m.n_rows()), c(m.n_cols());
    for (int i = 0; i < m.n_rows(); ++i) r[i] = i;
    for (int i = 0; i < m.n_cols(); ++i) c[i] = i;
    rows_ = m.n_rows();
    cols_ = m.n_cols();
    compile(m, r, c);
}

CompiledMatrix::CompiledMatrix(const MatrixPolynomial& m, const std::vector<IndexKey>& row_universe,
                               const std::vector<IndexKey>& col_universe) {
    rows_ = static_cast<int>(row_universe.size());
    cols_ = static_cast<int>(col_universe.size());
    compile(m, key_map(m.rows(), row_universe), key_map(m.cols(), col_universe));
}

void CompiledMatrix::compile(const MatrixPolynomial& m, const std::vector<int>& row_map,
                             const std::vector<int>& col_map) {
    for (auto& [rc, p] : m.entries()) {
        int r = row_map[rc.first], c = col_map[rc.second];
        if (r < 0 || c < 0) throw std::invalid_argument("matrix entry key missing from target universe");
        for (auto& [alpha, coef] : p.terms()) {
            Term t{r, c, coef, static_cast<uint32_t>(factors_.size()), 0};
            for (auto& f : alpha.entries()) factors_.push_back(f);
            t.end = static_cast<uint32_t>(factors_.size());
            terms_.push_back(t);
        }
    }
}

Eigen::MatrixXd CompiledMatrix::eval(const std::vector<double>& z) const {
    Eigen::MatrixXd out;
    eval_into(z, out);
    return out;
}

void CompiledMatrix::eval_into(const std::vector<double>& z, Eigen::MatrixXd& out) const {
    out.setZero(rows_, cols_);
    const int nz = static_cast<int>(z.size());
    for (const Term& t : terms_) {
        double v = t.coef;
        for (uint32_t k = t.begin; k < t.end; ++k) {
            auto [s, e] = factors_[k];
            if (s >= nz) throw std::out_of_range("assignment misses slot " + std::to_string(s));
            double x = z[s], pw = x;
            for (int j = 1; j < e; ++j) pw *= x;
            v *= pw;
        }
        out(t.row, t.col) += v;
    }
}

// ---------------------------------------------------------------- NumericMatrix

NumericMatrix::NumericMatrix(Eigen::MatrixXd dense) : is_dense_(true), dense_(std::move(dense)) {
    if (!dense_.allFinite()) throw std::invalid_argument("non-finite matrix entry");
}

NumericMatrix::NumericMatrix(Eigen::SparseMatrix<double> sparse) : is_dense_(false), sparse_(std::move(sparse)) {
    sparse_.makeCompressed();
}

NumericMatrix NumericMatrix::from_dense_auto(const Eigen::MatrixXd& m) {
    const double cells = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
    const double nnz = static_cast<double>((m.array() != 0.0).count());
    if (cells == 0 || nnz / cells > kDenseFillThreshold) return NumericMatrix(m);
    if (!m.allFinite()) throw std::invalid_argument("non-finite matrix entry");
    return NumericMatrix(Eigen::SparseMatrix<double>(m.sparseView()));
}

int NumericMatrix::rows() const { return is_dense_ ? static_cast<int>(dense_.rows()) : static_cast<int>(sparse_.rows()); }
int NumericMatrix::cols() const { return is_dense_ ? static_cast<int>(dense_.cols()) : static_cast<int>(sparse_.cols()); }

Eigen::MatrixXd NumericMatrix::dense() const { return is_dense_ ? dense_ : Eigen::MatrixXd(sparse_); }

std::string NumericMatrix::to_csv(const std::vector<IndexKey>& row_keys, const std::vector<IndexKey>& col_keys) const {
    if (static_cast<int>(row_keys.size()) != rows() || static_cast<int>(col_keys.size()) != cols())
        throw std::invalid_argument("key universe does not match matrix shape");
    Eigen::MatrixXd m = dense();
    std::ostringstream os;
    os << "row_key,col_key,value\n";
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0.0)
                os << row_keys[r].to_string() << ',' << col_keys[c].to_string() << ',' << format_double(m(r, c)) << '\n';
    return os.str();
}

NumericMatrix evaluate(const MatrixPolynomial& mf, const std::vector<double>& z) {
    return NumericMatrix::from_dense_auto(CompiledMatrix(mf).eval(z));
}

NumericMatrix expectation_matrix(const MatrixPolynomial& mf, const DistList& dists) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(mf.n_rows(), mf.n_cols());
    for (auto& [rc, p] : mf.entries()) m(rc.first, rc.second) = expectation(p, dists);
    return NumericMatrix::from_dense_auto(m);
}

Eigen::MatrixXd hermitian_dilation(const Eigen::MatrixXd& m) {
    const auto r = m.rows(), c = m.cols();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(r + c, r + c);
    d.topRightCorner(r, c) = m;
    d.bottomLeftCorner(c, r) = m.transpose();
    return d;
}

// ---------------------------------------------------------------- norms

double schatten_2t(const Eigen::MatrixXd& m, int t, SchattenPath path) {
    if (t < 1) throw std::invalid_argument("schatten order t must be >= 1");
    if (!m.allFinite()) throw std::invalid_argument("non-finite matrix entry");
    if (m.size() == 0) return 0.0;
    if (path == SchattenPath::Singular) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
        double s = 0.0;
        for (int i = 0; i < svd.singularValues().size(); ++i) s += std::pow(svd.singularValues()(i), 2 * t);
        return s;
    }
    Eigen::MatrixXd g = m.rows() <= m.cols() ? Eigen::MatrixXd(m * m.transpose()) : Eigen::MatrixXd(m.transpose() * m);
    if (t == 1) return g.trace();
    // tr(G^t) = ‖G^{t/2}‖_F² for even t, tr(G^{(t-1)/2} G G^{(t-1)/2}) otherwise.
    int h = t / 2;
    Eigen::MatrixXd p = g;
    for (int i = 1; i < h; ++i) p = p * g;
    if (t % 2 == 0) return p.squaredNorm();
    return (p.transpose() * g).cwiseProduct(p).sum();
}

double schatten_sym(const Eigen::MatrixXd& sym, int t) {
    if (sym.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) s += std::pow(std::abs(es.eigenvalues()(i)), t);
    return s;
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
    if (sym.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

LinearOperator LinearOperator::from_dense(const Eigen::MatrixXd& m) {
    auto hold = std::make_shared<Eigen::MatrixXd>(m);
    LinearOperator op;
    op.rows = m.rows();
    op.cols = m.cols();
    op.apply = [hold](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() = *hold * x; };
    op.apply_transpose = [hold](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() = hold->transpose() * x; };
    return op;
}

LinearOperator LinearOperator::from_sparse(const Eigen::SparseMatrix<double>& m) {
    auto hold = std::make_shared<Eigen::SparseMatrix<double>>(m);
    LinearOperator op;
    op.rows = m.rows();
    op.cols = m.cols();
    op.apply = [hold](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = *hold * x; };
    op.apply_transpose = [hold](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = hold->transpose() * x; };
    return op;
}

double spectral_norm_svd(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
}

namespace {

Eigen::VectorXd seeded_start(int64_t dim, uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXd v(dim);
    for (int64_t i = 0; i < dim; ++i) v(i) = rng.uniform(-1.0, 1.0);
    double nv = v.norm();
    if (nv == 0.0) v.setOnes(), nv = v.norm();
    return v / nv;
}

}  // namespace

SpectralResult spectral_norm(const LinearOperator& op, const SpectralOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("spectral tolerance must be positive");
    SpectralResult res;
    if (op.rows == 0 || op.cols == 0) {
        res.converged = true;
        return res;
    }
    const bool col_side = op.cols <= op.rows;
    const int64_t dim = col_side ? op.cols : op.rows;
    Eigen::VectorXd tmp;
    auto gram = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        if (col_side) {
            op.apply(x, tmp);
            op.apply_transpose(tmp, y);
        } else {
            op.apply_transpose(x, tmp);
            op.apply(tmp, y);
        }
    };

    Eigen::VectorXd q = seeded_start(dim, opts.seed);
    if (opts.method == SpectralMethod::Power) {
        Eigen::VectorXd y;
        for (int it = 1; it <= opts.max_iters; ++it) {
            gram(q, y);
            double lam = q.dot(y);
            res.iterations = it;
            res.value = std::sqrt(std::max(0.0, lam));
            double ny = y.norm();
            if (ny == 0.0) {
                res.value = 0.0;
                res.converged = true;
                return res;
            }
            // Eigen-residual test; the Rayleigh quotient error is then second order.
            if ((y - lam * q).norm() <= opts.tol * std::abs(lam)) {
                res.converged = true;
                return res;
            }
            q = y / ny;
        }
        return res;
    }

    // Lanczos with full reorthogonalization on the Gram operator.
    const int kmax = static_cast<int>(std::min<int64_t>(opts.max_iters, dim));
    Eigen::MatrixXd Q(dim, kmax);
    std::vector<double> alpha, beta;
    Eigen::VectorXd w;
    Q.col(0) = q;
    double theta = 0.0;
    for (int j = 0; j < kmax; ++j) {
        gram(Q.col(j), w);
        double a = Q.col(j).dot(w);
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            Eigen::VectorXd h = Q.leftCols(j + 1).transpose() * w;
            w.noalias() -= Q.leftCols(j + 1) * h;
        }
        double b = w.norm();
        const int k = j + 1;
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta = es.eigenvalues()(k - 1);
        double resid = std::abs(b * es.eigenvectors()(k - 1, k - 1));
        res.iterations = k;
        res.value = std::sqrt(std::max(0.0, theta));
        const double scale = std::max(std::abs(theta), 1e-300);
        if (b <= 1e-14 * std::max(1.0, std::abs(a)) || resid <= opts.tol * scale || k == dim) {
            res.converged = true;
            return res;
        }
        beta.push_back(b);
        if (j + 1 < kmax) Q.col(j + 1) = w / b;
    }
    return res;
}

}  // namespace gmlab
