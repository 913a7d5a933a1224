#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmlab/parallel.hpp"
#include "gmlab/polynomial.hpp"

namespace gmlab {

struct EnumerationBudget {
    int max_slots = 16;
    uint64_t max_configurations = uint64_t{1} << 20;
};

// Mutable process default, set once by the CLI from --budget-* flags.
EnumerationBudget& default_budget();

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

uint64_t configuration_count(const DistList& dists);
void check_budget(const DistList& dists, const EnumerationBudget& budget);

struct SampleAssignment {
    std::vector<double> values;
    uint64_t seed = 0;
    uint64_t draw_index = 0;
};

struct ExchangeableProbe {
    std::vector<double> base;
    int coordinate = 0;
    double replacement = 0.0;
    std::vector<double> resampled() const;
};

SampleAssignment sample(const DistList& dists, uint64_t seed, uint64_t draw_index = 0);
ExchangeableProbe resample_coordinate(const std::vector<double>& z, int i, const DistList& dists, uint64_t seed);

namespace detail {

template <class T>
void add_scaled(std::optional<T>& acc, double w, const T& v) {
    if (!acc)
        acc = v * w;
    else
        *acc += v * w;
}

inline void decode(uint64_t index, const DistList& dists, std::vector<double>& z, double& prob) {
    prob = 1.0;
    for (size_t s = 0; s < dists.size(); ++s) {
        const auto& sup = dists[s].support();
        const uint64_t k = index % sup.size();
        index /= sup.size();
        z[s] = sup[k].first;
        prob *= sup[k].second;
    }
}

inline constexpr uint64_t kChunk = 64;

}  // namespace detail

// Exact E[fn(Z)] over the product support. Chunks are fixed-size and combined
// in order, so the floating-point result is independent of the worker count.
template <class T, class F>
T exact_expectation(const DistList& dists, F&& fn, const EnumerationBudget& budget = default_budget()) {
    check_budget(dists, budget);
    const uint64_t total = configuration_count(dists);
    const uint64_t n_chunks = (total + detail::kChunk - 1) / detail::kChunk;
    std::vector<std::optional<T>> partial(n_chunks);
    parallel_for(n_chunks, [&](size_t c) {
        std::vector<double> z(dists.size());
        double prob;
        const uint64_t lo = c * detail::kChunk, hi = std::min(total, lo + detail::kChunk);
        for (uint64_t idx = lo; idx < hi; ++idx) {
            detail::decode(idx, dists, z, prob);
            detail::add_scaled(partial[c], prob, static_cast<T>(fn(z)));
        }
    });
    std::optional<T> acc;
    for (auto& p : partial)
        if (p) detail::add_scaled(acc, 1.0, *p);
    return *acc;
}

// Visit every configuration sequentially with its probability.
template <class F>
void for_each_configuration(const DistList& dists, F&& fn, const EnumerationBudget& budget = default_budget()) {
    check_budget(dists, budget);
    const uint64_t total = configuration_count(dists);
    std::vector<double> z(dists.size());
    double prob;
    for (uint64_t idx = 0; idx < total; ++idx) {
        detail::decode(idx, dists, z, prob);
        fn(z, prob);
    }
}

// E[fn(Z') | Z = z] for the exchangeable pair: i uniform over slots, Z'_i an
// independent draw. fn receives (z', i, replacement).
template <class T, class F>
T conditional_expectation(const std::vector<double>& z, const DistList& dists, F&& fn) {
    const int n = static_cast<int>(dists.size());
    if (n == 0) throw std::invalid_argument("conditional expectation needs at least one slot");
    std::optional<T> acc;
    std::vector<double> zp = z;
    for (int i = 0; i < n; ++i) {
        for (auto& [v, p] : dists[i].support()) {
            zp[i] = v;
            detail::add_scaled(acc, p / n, static_cast<T>(fn(static_cast<const std::vector<double>&>(zp), i, v)));
        }
        zp[i] = z[i];
    }
    return *acc;
}

struct CheckResult {
    double slack = 0.0;  // normalized; ≥ -1e-8 means the inequality holds
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};

inline constexpr double kSlackTol = -1e-8;

double loewner_slack(const Eigen::MatrixXd& lower, const Eigen::MatrixXd& upper);
double scalar_slack(double lhs, double rhs);

CheckResult check_square_sum(const std::vector<Eigen::MatrixXd>& mats);
CheckResult check_trace_power_sum(const Eigen::MatrixXd& x, const std::vector<Eigen::MatrixXd>& parts, int t);
// Uses |A|^{q−1} + |B|^{q−1}; for odd q this is A^{q−1} + B^{q−1}.
CheckResult check_mvt_trace(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c, int q, double s);
CheckResult check_jensen_operator(const std::vector<Eigen::MatrixXd>& bs, const std::vector<Eigen::MatrixXd>& as, int t);

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, int q);
Eigen::MatrixXd abs_power(const Eigen::MatrixXd& m, int q);  // |M|^q for symmetric M

}  // namespace gmlab
