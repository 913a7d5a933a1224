#include "gmlab/graph.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gmlab/estimation.hpp"
#include "gmlab/random.hpp"

namespace gmlab {

int64_t edge_slot(int i, int j, int n) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("edge slot needs distinct vertices in [n]");
    if (i > j) std::swap(i, j);
    const int64_t a = i, b = j;
    return a * n - (a + 1) * (a + 2) / 2 + b;
}

std::vector<double> EdgeSample::slot_values() const {
    std::vector<double> v(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) v[edge_slot(i, j, n)] = G(i, j);
    return v;
}

EdgeSample edges_from_slots(int n, const std::vector<double>& values) {
    if (static_cast<int64_t>(values.size()) < int64_t{n} * (n - 1) / 2) throw std::invalid_argument("too few edge values");
    EdgeSample s;
    s.n = n;
    s.G = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.G(i, j) = s.G(j, i) = values[edge_slot(i, j, n)];
    return s;
}

EdgeSample sample_edges(int n, const VariableDistribution& dist, uint64_t seed) {
    Rng rng(seed);
    EdgeSample s;
    s.n = n;
    s.G = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.G(i, j) = s.G(j, i) = rng.draw(dist);
    return s;
}

TupleIndex::TupleIndex(int n, int k) : n_(n), k_(k) {
    if (k < 0 || n < 0) throw std::invalid_argument("tuple index needs n, k >= 0");
    if (k > n) return;
    double count = 1;
    for (int i = 0; i < k; ++i) count *= (n - i);
    if (count > 5e8) throw BudgetError("too many injective tuples to index");
    offsets_.reserve(static_cast<size_t>(count));
    std::vector<int> cur;
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, int64_t flat) -> void {
        if (static_cast<int>(cur.size()) == k) {
            offsets_.push_back(flat);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            cur.push_back(v);
            self(self, flat * n + v);
            cur.pop_back();
            used[v] = 0;
        }
    };
    rec(rec, 0);
}

int64_t TupleIndex::row_of(int64_t flat) const {
    auto it = std::lower_bound(offsets_.begin(), offsets_.end(), flat);
    return (it != offsets_.end() && *it == flat) ? it - offsets_.begin() : -1;
}

std::vector<int> TupleIndex::tuple(int64_t row) const {
    std::vector<int> t(k_);
    int64_t f = offsets_[row];
    for (int i = k_ - 1; i >= 0; --i) {
        t[i] = static_cast<int>(f % n_);
        f /= n_;
    }
    return t;
}

namespace {

// Calls fn(phi) for every injective map V(τ) → [n].
template <class Fn>
void for_each_realization(int m, int n, Fn&& fn) {
    std::vector<int> phi(m, -1);
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == m) {
            fn(static_cast<const std::vector<int>&>(phi));
            return;
        }
        for (int x = 0; x < n; ++x) {
            if (used[x]) continue;
            used[x] = 1;
            phi[v] = x;
            self(self, v + 1);
            used[x] = 0;
        }
    };
    rec(rec, 0);
}

int64_t flat_of(const std::vector<int>& phi, const std::vector<int>& tuple, int n) {
    int64_t f = 0;
    for (int v : tuple) f = f * n + phi[v];
    return f;
}

}  // namespace

NumericMatrix build_graph_matrix(const Shape& s, const EdgeSample& g) {
    const int n = g.n;
    const TupleIndex rows(n, static_cast<int>(s.U.size())), cols(n, static_cast<int>(s.V.size()));
    const bool dense = rows.size() * cols.size() <= kMaterializeCap;
    Eigen::MatrixXd d;
    std::map<std::pair<int64_t, int64_t>, double> acc;
    if (dense) d = Eigen::MatrixXd::Zero(rows.size(), cols.size());
    for_each_realization(s.n_vertices(), n, [&](const std::vector<int>& phi) {
        double v = 1.0;
        for (auto [a, b] : s.edges) v *= g.G(phi[a], phi[b]);
        if (v == 0.0) return;
        const int64_t r = rows.row_of(flat_of(phi, s.U, n)), c = cols.row_of(flat_of(phi, s.V, n));
        if (dense)
            d(r, c) += v;
        else
            acc[{r, c}] += v;
    });
    if (dense) return NumericMatrix(d);
    std::vector<Eigen::Triplet<double>> trip;
    for (auto& [rc, v] : acc)
        if (v != 0.0) trip.emplace_back(static_cast<int>(rc.first), static_cast<int>(rc.second), v);
    Eigen::SparseMatrix<double> sp(rows.size(), cols.size());
    sp.setFromTriplets(trip.begin(), trip.end());
    return NumericMatrix(sp);
}

MatrixPolynomial as_matrix_polynomial(const Shape& s, int n) {
    const TupleIndex rows(n, static_cast<int>(s.U.size())), cols(n, static_cast<int>(s.V.size()));
    std::vector<IndexKey> rk, ck;
    for (int64_t r = 0; r < rows.size(); ++r) rk.push_back(IndexKey::plain(rows.tuple(r)));
    for (int64_t c = 0; c < cols.size(); ++c) ck.push_back(IndexKey::plain(cols.tuple(c)));
    std::map<std::pair<int64_t, int64_t>, Polynomial> acc;
    for_each_realization(s.n_vertices(), n, [&](const std::vector<int>& phi) {
        std::vector<std::pair<int, int>> e;
        for (auto [a, b] : s.edges) e.emplace_back(static_cast<int>(edge_slot(phi[a], phi[b], n)), 1);
        std::sort(e.begin(), e.end());
        acc[{rows.row_of(flat_of(phi, s.U, n)), cols.row_of(flat_of(phi, s.V, n))}].add_term(MultiIndex(e), 1.0);
    });
    MatrixPolynomial m(rk, ck);
    for (auto& [rc, p] : acc) m.set(static_cast<int>(rc.first), static_cast<int>(rc.second), p);
    return m;
}

// ---------------------------------------------------------------------------
// Matrix-free path. The injective sum is rewritten by Möbius inversion over set
// partitions of V(τ): Σ_injective = Σ_π μ(π) Σ_{φ constant on blocks of π}. Each
// unrestricted sum is a small tensor network contracted by variable elimination.

namespace {

struct Tensor {
    std::vector<int> vars;
    std::vector<double> data;
};

int64_t ipow(int64_t n, size_t k) {
    int64_t r = 1;
    for (size_t i = 0; i < k; ++i) r *= n;
    return r;
}

Tensor permute(const Tensor& t, const std::vector<int>& order, int n) {
    if (order == t.vars) return t;
    const size_t r = t.vars.size();
    std::vector<int> src_pos(r);
    for (size_t i = 0; i < r; ++i)
        src_pos[i] = static_cast<int>(std::find(t.vars.begin(), t.vars.end(), order[i]) - t.vars.begin());
    std::vector<int64_t> src_stride(r);
    for (size_t i = 0; i < r; ++i) src_stride[i] = ipow(n, r - 1 - i);
    Tensor out{order, std::vector<double>(t.data.size())};
    std::vector<int> idx(r, 0);
    for (size_t f = 0; f < out.data.size(); ++f) {
        int64_t off = 0;
        for (size_t i = 0; i < r; ++i) off += idx[i] * src_stride[src_pos[i]];
        out.data[f] = t.data[off];
        for (int i = static_cast<int>(r) - 1; i >= 0; --i) {
            if (++idx[i] < n) break;
            idx[i] = 0;
        }
    }
    return out;
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) == b.end()) out.push_back(x);
    return out;
}
std::vector<int> both(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
    return out;
}

// Σ over `summed` of A·B; the result is laid out as [batch, freeA, freeB].
Tensor contract(const Tensor& A, const Tensor& B, const std::vector<int>& summed, int n) {
    const std::vector<int> shared = both(A.vars, B.vars);
    const std::vector<int> batch = minus(shared, summed);
    const std::vector<int> fa = minus(A.vars, shared), fb = minus(B.vars, shared);
    std::vector<int> oa = batch, ob = batch;
    oa.insert(oa.end(), fa.begin(), fa.end());
    oa.insert(oa.end(), summed.begin(), summed.end());
    ob.insert(ob.end(), summed.begin(), summed.end());
    ob.insert(ob.end(), fb.begin(), fb.end());
    const Tensor pa = permute(A, oa, n), pb = permute(B, ob, n);
    const int64_t nb = ipow(n, batch.size()), na = ipow(n, fa.size()), ns = ipow(n, summed.size()),
                  nf = ipow(n, fb.size());
    if (nb * na * nf > kTensorCap) throw BudgetError("graph-matrix contraction exceeds the intermediate size cap");
    Tensor out;
    out.vars = batch;
    out.vars.insert(out.vars.end(), fa.begin(), fa.end());
    out.vars.insert(out.vars.end(), fb.begin(), fb.end());
    out.data.assign(static_cast<size_t>(nb * na * nf), 0.0);
    using RM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    for (int64_t q = 0; q < nb; ++q) {
        Eigen::Map<const RM> ma(pa.data.data() + q * na * ns, na, ns);
        Eigen::Map<const RM> mb(pb.data.data() + q * ns * nf, ns, nf);
        Eigen::Map<RM> mo(out.data.data() + q * na * nf, na, nf);
        mo.noalias() = ma * mb;
    }
    return out;
}

Tensor reduce(const Tensor& t, int var, int n) {
    Tensor ones{{var}, std::vector<double>(n, 1.0)};
    return contract(t, ones, {var}, n);
}

struct Quotient {
    double weight;                              // Möbius coefficient
    int n_blocks;
    std::vector<int> block_of;                  // vertex → block
    std::map<std::pair<int, int>, int> edges;   // block pair → multiplicity
};

std::vector<Quotient> quotients(const Shape& s) {
    const int m = s.n_vertices();
    std::vector<char> in_u(m, 0), in_v(m, 0);
    for (int u : s.U) in_u[u] = 1;
    for (int v : s.V) in_v[v] = 1;
    std::vector<Quotient> out;
    std::vector<int> rgs(m, 0);
    auto rec = [&](auto&& self, int v, int blocks) -> void {
        if (v == m) {
            Quotient q;
            q.n_blocks = blocks;
            q.block_of = rgs;
            std::vector<int> size(blocks, 0), nu(blocks, 0), nv(blocks, 0);
            for (int x = 0; x < m; ++x) {
                ++size[rgs[x]];
                nu[rgs[x]] += in_u[x];
                nv[rgs[x]] += in_v[x];
            }
            for (int b = 0; b < blocks; ++b)
                if (nu[b] > 1 || nv[b] > 1) return;
            for (auto [a, c] : s.edges) {
                if (rgs[a] == rgs[c]) return;
                ++q.edges[std::minmax(rgs[a], rgs[c])];
            }
            q.weight = 1.0;
            for (int b = 0; b < blocks; ++b) {
                double f = 1.0;
                for (int k = 2; k < size[b]; ++k) f *= k;
                q.weight *= (size[b] % 2 == 1 ? 1.0 : -1.0) * f;
            }
            out.push_back(std::move(q));
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            rgs[v] = b;
            self(self, v + 1, std::max(blocks, b + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Contract all factors down to a tensor over `keep` (in that order).
Tensor eliminate(std::vector<Tensor> factors, const std::vector<int>& keep, int n_blocks, int n) {
    double scale = 1.0;
    for (int v = 0; v < n_blocks; ++v) {
        if (std::find(keep.begin(), keep.end(), v) != keep.end()) continue;
        bool present = false;
        for (auto& f : factors) present = present || std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end();
        if (!present) scale *= n;
    }
    auto has = [](const Tensor& t, int v) { return std::find(t.vars.begin(), t.vars.end(), v) != t.vars.end(); };
    for (;;) {
        int best = -1;
        size_t best_width = SIZE_MAX;
        for (int v = 0; v < n_blocks; ++v) {
            if (std::find(keep.begin(), keep.end(), v) != keep.end()) continue;
            std::vector<int> uni;
            bool any = false;
            for (auto& f : factors)
                if (has(f, v)) {
                    any = true;
                    for (int x : f.vars)
                        if (std::find(uni.begin(), uni.end(), x) == uni.end()) uni.push_back(x);
                }
            if (any && uni.size() < best_width) {
                best_width = uni.size();
                best = v;
            }
        }
        if (best < 0) break;
        std::vector<Tensor> with, rest;
        for (auto& f : factors) (has(f, best) ? with : rest).push_back(std::move(f));
        while (with.size() > 2) {
            size_t bi = 0, bj = 1, bw = SIZE_MAX;
            for (size_t i = 0; i < with.size(); ++i)
                for (size_t j = i + 1; j < with.size(); ++j) {
                    size_t w = with[i].vars.size() + with[j].vars.size() - both(with[i].vars, with[j].vars).size();
                    if (w < bw) {
                        bw = w;
                        bi = i;
                        bj = j;
                    }
                }
            Tensor merged = contract(with[bi], with[bj], {}, n);
            with.erase(with.begin() + bj);
            with[bi] = std::move(merged);
        }
        rest.push_back(with.size() == 2 ? contract(with[0], with[1], {best}, n) : reduce(with[0], best, n));
        factors = std::move(rest);
    }
    Tensor acc{{}, {scale}};
    for (auto& f : factors) acc = contract(acc, f, {}, n);
    // Broadcast over kept variables that no factor mentions.
    for (int v : keep)
        if (!has(acc, v)) acc = contract(acc, Tensor{{v}, std::vector<double>(n, 1.0)}, {}, n);
    return permute(acc, keep, n);
}

class GraphApply {
public:
    GraphApply(const Shape& s, const EdgeSample& g)
        : s_(s), n_(g.n), rows_(g.n, static_cast<int>(s.U.size())), cols_(g.n, static_cast<int>(s.V.size())) {
        qs_ = quotients(s);
        for (auto& q : qs_)
            for (auto& [bp, mult] : q.edges)
                if (!powers_.count(mult)) powers_[mult] = g.G.array().pow(mult).matrix();
    }
    int64_t rows() const { return rows_.size(); }
    int64_t cols() const { return cols_.size(); }

    // forward: rows ← cols; otherwise cols ← rows.
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y, bool forward) const {
        const std::vector<int>& in_t = forward ? s_.V : s_.U;
        const std::vector<int>& out_t = forward ? s_.U : s_.V;
        const TupleIndex& in_idx = forward ? cols_ : rows_;
        const TupleIndex& out_idx = forward ? rows_ : cols_;
        y = Eigen::VectorXd::Zero(out_idx.size());
        for (const Quotient& q : qs_) {
            std::vector<Tensor> factors;
            for (auto& [bp, mult] : q.edges) {
                const Eigen::MatrixXd& w = powers_.at(mult);
                Tensor t{{bp.first, bp.second}, std::vector<double>(static_cast<size_t>(n_) * n_)};
                for (int i = 0; i < n_; ++i)
                    for (int j = 0; j < n_; ++j) t.data[static_cast<size_t>(i) * n_ + j] = w(i, j);
                factors.push_back(std::move(t));
            }
            Tensor xin;
            for (int v : in_t) xin.vars.push_back(q.block_of[v]);
            xin.data.assign(static_cast<size_t>(ipow(n_, in_t.size())), 0.0);
            for (int64_t r = 0; r < in_idx.size(); ++r) xin.data[in_idx.offset(r)] = x[r];
            factors.push_back(std::move(xin));
            std::vector<int> keep;
            for (int v : out_t) keep.push_back(q.block_of[v]);
            const Tensor out = eliminate(std::move(factors), keep, q.n_blocks, n_);
            for (int64_t r = 0; r < out_idx.size(); ++r) y[r] += q.weight * out.data[out_idx.offset(r)];
        }
    }

private:
    Shape s_;
    int n_;
    TupleIndex rows_, cols_;
    std::vector<Quotient> qs_;
    std::map<int, Eigen::MatrixXd> powers_;
};

}  // namespace

LinearOperator graph_operator(const Shape& s, const EdgeSample& g) {
    auto impl = std::make_shared<GraphApply>(s, g);
    LinearOperator op;
    op.rows = impl->rows();
    op.cols = impl->cols();
    op.apply = [impl](const Eigen::VectorXd& x, Eigen::VectorXd& y) { impl->apply(x, y, true); };
    op.apply_transpose = [impl](const Eigen::VectorXd& x, Eigen::VectorXd& y) { impl->apply(x, y, false); };
    return op;
}

NormStats empirical_norm(const Shape& s, int n, double p, int samples, uint64_t seed, bool timing) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const VariableDistribution dist = VariableDistribution::p_biased(p);
    NormStats st;
    st.norms.resize(samples);
    st.seeds.resize(samples);
    st.elapsed_ms.assign(samples, 0.0);
    parallel_for(samples, [&](size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        const uint64_t sd = derive_seed(seed, i);
        const EdgeSample g = sample_edges(n, dist, sd);
        SpectralOptions opts;
        opts.seed = derive_seed(sd, 1);
        st.norms[i] = spectral_norm(graph_operator(s, g), opts).value;
        st.seeds[i] = sd;
        if (timing)
            st.elapsed_ms[i] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });
    st.mean = std::accumulate(st.norms.begin(), st.norms.end(), 0.0) / samples;
    if (samples > 1) {
        double ss = 0.0;
        for (double v : st.norms) ss += (v - st.mean) * (v - st.mean);
        st.std_error = std::sqrt(ss / (samples - 1) / samples);
    }
    return st;
}

ScalingFit fit_log_log(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit needs at least two points");
    const size_t k = xs.size();
    double mx = 0, my = 0;
    std::vector<double> lx(k), ly(k);
    for (size_t i = 0; i < k; ++i) {
        if (!(xs[i] > 0 && ys[i] > 0)) throw std::invalid_argument("log-log fit needs positive values");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < k; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    ScalingFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0;
    for (size_t i = 0; i < k; ++i) {
        const double e = ly[i] - (f.intercept + f.slope * lx[i]);
        rss += e * e;
    }
    f.residual = std::sqrt(rss / k);
    return f;
}

double PRule::at(int n) const { return kind == Fixed ? value : std::pow(static_cast<double>(n), -value); }

std::string PRule::to_string() const { return (kind == Fixed ? "fixed:" : "power:") + format_double(value); }

PRule parse_p_rule(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("p-rule must be fixed:<p> or power:<theta>");
    const std::string kind = text.substr(0, colon), num = text.substr(colon + 1);
    PRule r;
    size_t used = 0;
    try {
        r.value = std::stod(num, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != num.size()) throw std::invalid_argument("p-rule value '" + num + "' is not a number");
    if (kind == "fixed") {
        r.kind = PRule::Fixed;
        if (!(r.value > 0 && r.value <= 0.5)) throw std::invalid_argument("fixed p must lie in (0, 1/2]");
    } else if (kind == "power") {
        r.kind = PRule::Power;
        if (!(r.value > 0)) throw std::invalid_argument("power exponent must be positive");
    } else {
        throw std::invalid_argument("unknown p-rule kind '" + kind + "'");
    }
    return r;
}

}  // namespace gmlab
