#include "gmlab/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gmlab {

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<std::pair<int, int>> entries) {
    std::sort(entries.begin(), entries.end());
    for (auto& [s, e] : entries) {
        if (s < 0) throw std::invalid_argument("negative variable slot");
        if (e < 0) throw std::invalid_argument("negative exponent");
        if (e == 0) continue;
        if (!entries_.empty() && entries_.back().first == s)
            entries_.back().second += e;
        else
            entries_.emplace_back(s, e);
    }
}

MultiIndex MultiIndex::unit(int slot, int exponent) { return MultiIndex({{slot, exponent}}); }

MultiIndex MultiIndex::from_dense(const std::vector<int>& exponents) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < static_cast<int>(exponents.size()); ++i)
        if (exponents[i] != 0) e.emplace_back(i, exponents[i]);
    return MultiIndex(std::move(e));
}

int MultiIndex::total_degree() const {
    int s = 0;
    for (auto& [_, e] : entries_) s += e;
    return s;
}

int MultiIndex::max_exponent() const {
    int m = 0;
    for (auto& [_, e] : entries_) m = std::max(m, e);
    return m;
}

int MultiIndex::exponent(int slot) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(slot, 0));
    return (it != entries_.end() && it->first == slot) ? it->second : 0;
}

std::vector<int> MultiIndex::support() const {
    std::vector<int> s;
    s.reserve(entries_.size());
    for (auto& [slot, _] : entries_) s.push_back(slot);
    return s;
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
    for (auto& [s, e] : entries_)
        if (other.exponent(s) < e) return false;
    return true;
}

bool MultiIndex::exact_sub_of(const MultiIndex& other) const {
    for (auto& [s, e] : entries_)
        if (other.exponent(s) != e) return false;
    return true;
}

bool MultiIndex::disjoint_from(const MultiIndex& other) const {
    for (auto& [s, _] : entries_)
        if (other.exponent(s) != 0) return false;
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    auto e = entries_;
    e.insert(e.end(), other.entries_.begin(), other.entries_.end());
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
    std::vector<std::pair<int, int>> out;
    for (auto& [s, e] : entries_) {
        int r = e - other.exponent(s);
        if (r < 0) throw std::invalid_argument("multi-index subtraction underflow");
        if (r > 0) out.emplace_back(s, r);
    }
    for (auto& [s, e] : other.entries_)
        if (exponent(s) == 0) throw std::invalid_argument("multi-index subtraction underflow");
    return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::restricted_to(const std::vector<int>& slots) const {
    std::vector<std::pair<int, int>> out;
    for (auto& [s, e] : entries_)
        if (std::find(slots.begin(), slots.end(), s) != slots.end()) out.emplace_back(s, e);
    return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::without(const std::vector<int>& slots) const {
    std::vector<std::pair<int, int>> out;
    for (auto& [s, e] : entries_)
        if (std::find(slots.begin(), slots.end(), s) == slots.end()) out.emplace_back(s, e);
    return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::scaled(int factor) const {
    auto e = entries_;
    for (auto& p : e) p.second *= factor;
    return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(entries_[i].first) + ":" + std::to_string(entries_[i].second);
    }
    return s + "}";
}

// ---------------------------------------------------------------- BooleanMask

BooleanMask::BooleanMask(std::vector<int> slots) : slots_(std::move(slots)) {
    std::sort(slots_.begin(), slots_.end());
    slots_.erase(std::unique(slots_.begin(), slots_.end()), slots_.end());
}

bool BooleanMask::contains(int slot) const { return std::binary_search(slots_.begin(), slots_.end(), slot); }

bool BooleanMask::within(const MultiIndex& alpha) const {
    for (int s : slots_)
        if (alpha.exponent(s) == 0) return false;
    return true;
}

BooleanMask BooleanMask::complement_in(const std::vector<int>& ambient) const {
    std::vector<int> out;
    for (int s : ambient)
        if (!contains(s)) out.push_back(s);
    return BooleanMask(std::move(out));
}

// ---------------------------------------------------------------- distributions

VariableDistribution::VariableDistribution(std::vector<std::pair<double, double>> support, std::string label)
    : label_(std::move(label)) {
    if (support.empty() || support.size() > 8)
        throw std::invalid_argument("distribution support must have 1 to 8 points");
    std::sort(support.begin(), support.end());
    double total = 0.0;
    for (auto& [v, p] : support) {
        if (!std::isfinite(v) || !std::isfinite(p) || p <= 0.0)
            throw std::invalid_argument("distribution points need finite values and positive probabilities");
        total += p;
        if (!support_.empty() && support_.back().first == v)
            support_.back().second += p;
        else
            support_.emplace_back(v, p);
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("distribution probabilities must sum to 1");
    moments_.resize(65);
    for (int k = 0; k <= 64; ++k) {
        double m = 0.0;
        for (auto& [v, p] : support_) m += p * std::pow(v, k);
        moments_[k] = m;
    }
}

VariableDistribution VariableDistribution::rademacher() {
    VariableDistribution d = p_biased(0.5);
    d.label_ = "rademacher";
    return d;
}

VariableDistribution VariableDistribution::p_biased(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p-biased law needs 0 < p < 1");
    VariableDistribution d({{-std::sqrt((1.0 - p) / p), p}, {std::sqrt(p / (1.0 - p)), 1.0 - p}},
                           "p_biased(" + format_double(p) + ")");
    d.p_ = p;
    return d;
}

double VariableDistribution::moment(int k) const {
    if (k < 0) throw std::invalid_argument("negative moment order");
    if (k <= 64) return moments_[k];
    double m = 0.0;
    for (auto& [v, p] : support_) m += p * std::pow(v, k);
    return m;
}

double VariableDistribution::abs_central_moment(int k) const {
    double mu = mean();
    double m = 0.0;
    for (auto& [v, p] : support_) m += p * std::pow(std::abs(v - mu), k);
    return m;
}

VariableDistribution VariableDistribution::squared() const {
    std::vector<std::pair<double, double>> s;
    for (auto& [v, p] : support_) s.emplace_back(v * v, p);
    return VariableDistribution(std::move(s), "square of " + label_);
}

DistList uniform_dists(int n_slots, const VariableDistribution& d) { return DistList(n_slots, d); }

double moment(const VariableDistribution& d, int k) { return d.moment(k); }

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(double constant) {
    if (constant != 0.0) terms_.emplace(MultiIndex{}, constant);
}

Polynomial::Polynomial(Terms terms) {
    for (auto& [a, c] : terms)
        if (c != 0.0) terms_.emplace(a, c);
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, double coef) {
    Polynomial p;
    p.add_term(alpha, coef);
    return p;
}

Polynomial Polynomial::variable(int slot) { return monomial(MultiIndex::unit(slot)); }

double Polynomial::constant_term() const { return coefficient(MultiIndex{}); }

double Polynomial::coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const MultiIndex& alpha, double coef) {
    if (coef == 0.0) return;
    auto [it, inserted] = terms_.emplace(alpha, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0.0) terms_.erase(it);
    }
}

int Polynomial::total_degree() const {
    int d = 0;
    for (auto& [a, _] : terms_) d = std::max(d, a.total_degree());
    return d;
}

int Polynomial::max_var_degree() const {
    int d = 0;
    for (auto& [a, _] : terms_) d = std::max(d, a.max_exponent());
    return d;
}

int Polynomial::degree_in(int slot) const {
    int d = 0;
    for (auto& [a, _] : terms_) d = std::max(d, a.exponent(slot));
    return d;
}

int Polynomial::max_slot() const {
    int m = -1;
    for (auto& [a, _] : terms_)
        if (!a.empty()) m = std::max(m, a.entries().back().first);
    return m;
}

bool Polynomial::is_multilinear() const {
    for (auto& [a, _] : terms_)
        if (a.max_exponent() > 1) return false;
    return true;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

double Polynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (auto& [_, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

double Polynomial::eval(const std::vector<double>& z) const {
    double total = 0.0;
    for (auto& [a, c] : terms_) {
        double v = c;
        for (auto& [s, e] : a.entries()) {
            if (s >= static_cast<int>(z.size())) throw std::out_of_range("assignment misses slot " + std::to_string(s));
            double x = z[s];
            double pw = x;
            for (int k = 1; k < e; ++k) pw *= x;
            v *= pw;
        }
        total += v;
    }
    return total;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return *this * -1.0; }

Polynomial Polynomial::operator*(double s) const {
    Polynomial r;
    if (s == 0.0) return r;
    for (auto& [a, c] : terms_) r.terms_.emplace(a, c * s);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (auto& [a, c] : terms_)
        for (auto& [b, d] : o.terms_) r.add_term(a + b, c * d);
    return r;
}

Polynomial Polynomial::shifted(int offset) const {
    Polynomial r;
    for (auto& [a, c] : terms_) {
        auto e = a.entries();
        for (auto& p : e) p.first += offset;
        r.add_term(MultiIndex(std::move(e)), c);
    }
    return r;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [a, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += format_double(c);
        for (auto& [s, e] : a.entries()) out += " * Z[" + std::to_string(s) + "]^" + std::to_string(e);
    }
    return out;
}

std::string CenteredPolynomial::to_string() const {
    std::string out = format_double(constant);
    for (auto& [a, c] : chi_terms) {
        out += " + " + format_double(c) + " * chi[";
        bool first = true;
        for (auto& [s, e] : a.entries()) {
            if (!first) out += " * ";
            first = false;
            out += "Z[" + std::to_string(s) + "]^" + std::to_string(e);
        }
        out += "]";
    }
    return out;
}

double max_coefficient_distance(const Polynomial& a, const Polynomial& b) {
    double m = 0.0;
    for (auto& [k, c] : a.terms()) m = std::max(m, std::abs(c - b.coefficient(k)));
    for (auto& [k, c] : b.terms())
        if (a.terms().find(k) == a.terms().end()) m = std::max(m, std::abs(c));
    return m;
}

// ---------------------------------------------------------------- operators

namespace {

const VariableDistribution& dist_at(const DistList& dists, int slot) {
    if (slot < 0 || slot >= static_cast<int>(dists.size()))
        throw std::out_of_range("no distribution attached to slot " + std::to_string(slot));
    return dists[slot];
}

}  // namespace

Polynomial nabla(const MultiIndex& alpha, const Polynomial& f) {
    Polynomial r;
    for (auto& [beta, c] : f.terms())
        if (alpha.exact_sub_of(beta)) r.add_term(beta - alpha, c);
    return r;
}

Polynomial chi(const MultiIndex& alpha, const DistList& dists) {
    if (alpha.empty()) throw std::invalid_argument("chi requires a nonzero multi-index");
    Polynomial r(1.0);
    for (auto& [s, e] : alpha.entries()) {
        Polynomial factor = Polynomial::monomial(MultiIndex::unit(s, e)) - Polynomial(dist_at(dists, s).moment(e));
        r = r * factor;
    }
    return r;
}

CenteredPolynomial to_chi_basis(const Polynomial& f, const DistList& dists) {
    CenteredPolynomial g;
    for (auto& [beta, c] : f.terms()) {
        const auto& e = beta.entries();
        const size_t s = e.size();
        std::vector<double> m(s);
        for (size_t i = 0; i < s; ++i) m[i] = dist_at(dists, e[i].first).moment(e[i].second);
        for (uint64_t mask = 0; mask < (uint64_t{1} << s); ++mask) {
            double coef = c;
            std::vector<std::pair<int, int>> kept;
            for (size_t i = 0; i < s; ++i) {
                if (mask >> i & 1)
                    kept.push_back(e[i]);
                else
                    coef *= m[i];
            }
            if (coef == 0.0) continue;
            if (kept.empty()) {
                g.constant += coef;
            } else {
                double& slot = g.chi_terms[MultiIndex(std::move(kept))];
                slot += coef;
            }
        }
    }
    for (auto it = g.chi_terms.begin(); it != g.chi_terms.end();)
        it = it->second == 0.0 ? g.chi_terms.erase(it) : std::next(it);
    return g;
}

Polynomial from_chi_basis(const CenteredPolynomial& g, const DistList& dists) {
    Polynomial r(g.constant);
    for (auto& [alpha, c] : g.chi_terms) {
        const auto& e = alpha.entries();
        const size_t s = e.size();
        std::vector<double> m(s);
        for (size_t i = 0; i < s; ++i) m[i] = -dist_at(dists, e[i].first).moment(e[i].second);
        for (uint64_t mask = 0; mask < (uint64_t{1} << s); ++mask) {
            double coef = c;
            std::vector<std::pair<int, int>> kept;
            for (size_t i = 0; i < s; ++i) {
                if (mask >> i & 1)
                    kept.push_back(e[i]);
                else
                    coef *= m[i];
            }
            r.add_term(MultiIndex(std::move(kept)), coef);
        }
    }
    return r;
}

CenteredPolynomial laplacian(const CenteredPolynomial& g, int n_slots) {
    if (n_slots < 1) throw std::invalid_argument("slot count must be positive");
    CenteredPolynomial r;
    for (auto& [alpha, c] : g.chi_terms) r.chi_terms[alpha] = c * alpha.support_size() / n_slots;
    return r;
}

CenteredPolynomial laplacian_inv(const CenteredPolynomial& g, int n_slots) {
    if (n_slots < 1) throw std::invalid_argument("slot count must be positive");
    if (std::abs(g.constant) > 1e-12)
        throw std::invalid_argument("laplacian is singular on constants; input must be mean-zero");
    CenteredPolynomial r;
    for (auto& [alpha, c] : g.chi_terms) r.chi_terms[alpha] = c * n_slots / alpha.support_size();
    return r;
}

Polynomial kernel_poly(const CenteredPolynomial& f, int n_slots, const DistList& dists) {
    for (auto& [alpha, _] : f.chi_terms)
        if (alpha.entries().back().first >= n_slots) throw std::invalid_argument("chi term uses a slot beyond n");
    Polynomial h = from_chi_basis(laplacian_inv(f, n_slots), dists);
    return h - h.shifted(n_slots);
}

std::vector<std::pair<int, Polynomial>> coordinate_difference(const Polynomial& f, int slot, int max_degree) {
    if (f.degree_in(slot) > max_degree) throw std::invalid_argument("degree at slot exceeds declared maximum");
    std::vector<std::pair<int, Polynomial>> out;
    for (int l = 1; l <= max_degree; ++l) {
        Polynomial g = nabla(MultiIndex::unit(slot, l), f);
        if (!g.is_zero()) out.emplace_back(l, std::move(g));
    }
    return out;
}

double expectation(const Polynomial& f, const DistList& dists) {
    double total = 0.0;
    for (auto& [a, c] : f.terms()) {
        double v = c;
        for (auto& [s, e] : a.entries()) v *= dist_at(dists, s).moment(e);
        total += v;
    }
    return total;
}

Polynomial multilinearize_rademacher(const Polynomial& f) {
    Polynomial r;
    for (auto& [a, c] : f.terms()) {
        std::vector<std::pair<int, int>> e;
        for (auto& [s, k] : a.entries())
            if (k % 2) e.emplace_back(s, 1);
        r.add_term(MultiIndex(std::move(e)), c);
    }
    return r;
}

}  // namespace gmlab
