#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gmlab {

// Sparse exponent vector over integer variable slots. Entries are kept sorted
// by slot with strictly positive exponents.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::pair<int, int>> entries);

    static MultiIndex unit(int slot, int exponent = 1);
    static MultiIndex from_dense(const std::vector<int>& exponents);

    const std::vector<std::pair<int, int>>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    int support_size() const { return static_cast<int>(entries_.size()); }
    int total_degree() const;
    int max_exponent() const;
    int exponent(int slot) const;
    std::vector<int> support() const;

    // α ≤ β coordinate-wise.
    bool dominated_by(const MultiIndex& other) const;
    // α ⊴ β: every α_i is either 0 or equal to β_i.
    bool exact_sub_of(const MultiIndex& other) const;
    bool disjoint_from(const MultiIndex& other) const;

    MultiIndex operator+(const MultiIndex& other) const;
    MultiIndex operator-(const MultiIndex& other) const;  // requires other ≤ this
    MultiIndex restricted_to(const std::vector<int>& slots) const;
    MultiIndex without(const std::vector<int>& slots) const;
    MultiIndex scaled(int factor) const;

    std::string to_string() const;

    auto operator<=>(const MultiIndex&) const = default;
    bool operator==(const MultiIndex&) const = default;

private:
    std::vector<std::pair<int, int>> entries_;
};

// Sparse set of slots, γ ∈ {0,1}ⁿ.
class BooleanMask {
public:
    BooleanMask() = default;
    explicit BooleanMask(std::vector<int> slots);

    const std::vector<int>& slots() const { return slots_; }
    bool contains(int slot) const;
    bool empty() const { return slots_.empty(); }
    bool within(const MultiIndex& alpha) const;
    BooleanMask complement_in(const std::vector<int>& ambient) const;

    auto operator<=>(const BooleanMask&) const = default;
    bool operator==(const BooleanMask&) const = default;

private:
    std::vector<int> slots_;
};

// Finite-support scalar law.
class VariableDistribution {
public:
    VariableDistribution(std::vector<std::pair<double, double>> support, std::string label = "custom");

    static VariableDistribution rademacher();
    static VariableDistribution p_biased(double p);

    const std::vector<std::pair<double, double>>& support() const { return support_; }
    const std::string& label() const { return label_; }
    double moment(int k) const;
    double abs_central_moment(int k) const;
    double mean() const { return moment(1); }
    // Law of Z² as its own finite-support distribution.
    VariableDistribution squared() const;
    bool is_p_biased() const { return p_ >= 0.0; }
    double p() const { return p_; }

private:
    std::vector<std::pair<double, double>> support_;
    std::string label_;
    double p_ = -1.0;
    std::vector<double> moments_;
};

using DistList = std::vector<VariableDistribution>;

DistList uniform_dists(int n_slots, const VariableDistribution& d);

class Polynomial {
public:
    using Terms = std::map<MultiIndex, double>;

    Polynomial() = default;
    explicit Polynomial(double constant);
    explicit Polynomial(Terms terms);

    static Polynomial monomial(const MultiIndex& alpha, double coef = 1.0);
    static Polynomial variable(int slot);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    double constant_term() const;
    double coefficient(const MultiIndex& alpha) const;

    void add_term(const MultiIndex& alpha, double coef);

    int total_degree() const;
    int max_var_degree() const;
    int degree_in(int slot) const;
    int max_slot() const;  // -1 when no variables occur
    bool is_multilinear() const;
    bool is_constant() const;
    double max_abs_coefficient() const;

    double eval(const std::vector<double>& z) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(double s) const;
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    // Rename slots: slot s becomes s + offset.
    Polynomial shifted(int offset) const;

    std::string to_string() const;

private:
    Terms terms_;
};

// f = constant + Σ coef·χ_α
struct CenteredPolynomial {
    std::map<MultiIndex, double> chi_terms;
    double constant = 0.0;

    std::string to_string() const;
};

double max_coefficient_distance(const Polynomial& a, const Polynomial& b);

Polynomial nabla(const MultiIndex& alpha, const Polynomial& f);
Polynomial chi(const MultiIndex& alpha, const DistList& dists);
CenteredPolynomial to_chi_basis(const Polynomial& f, const DistList& dists);
Polynomial from_chi_basis(const CenteredPolynomial& g, const DistList& dists);
CenteredPolynomial laplacian(const CenteredPolynomial& g, int n_slots);
CenteredPolynomial laplacian_inv(const CenteredPolynomial& g, int n_slots);
// K_f(z, z') over 2n slots: z occupies slots [0, n), z' occupies [n, 2n).
Polynomial kernel_poly(const CenteredPolynomial& f, int n_slots, const DistList& dists);
std::vector<std::pair<int, Polynomial>> coordinate_difference(const Polynomial& f, int slot, int max_degree);
double expectation(const Polynomial& f, const DistList& dists);
double moment(const VariableDistribution& d, int k);
Polynomial multilinearize_rademacher(const Polynomial& f);

std::string format_double(double v);

}  // namespace gmlab
