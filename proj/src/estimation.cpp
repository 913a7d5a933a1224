#include "gmlab/estimation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gmlab/matrix.hpp"
#include "gmlab/random.hpp"

namespace gmlab {

namespace {
int g_workers = 1;
}

int worker_count() { return g_workers; }
void set_worker_count(int workers) { g_workers = workers < 1 ? 1 : workers; }

EnumerationBudget& default_budget() {
    static EnumerationBudget b;
    return b;
}

uint64_t configuration_count(const DistList& dists) {
    uint64_t total = 1;
    for (auto& d : dists) {
        const uint64_t k = d.support().size();
        if (total > (uint64_t{1} << 62) / k) return UINT64_MAX;
        total *= k;
    }
    return total;
}

void check_budget(const DistList& dists, const EnumerationBudget& budget) {
    if (static_cast<int>(dists.size()) > budget.max_slots)
        throw BudgetError("enumeration needs " + std::to_string(dists.size()) + " slots; budget allows " +
                          std::to_string(budget.max_slots));
    const uint64_t c = configuration_count(dists);
    if (c > budget.max_configurations)
        throw BudgetError("enumeration needs " + std::to_string(c) + " configurations; budget allows " +
                          std::to_string(budget.max_configurations));
}

std::vector<double> ExchangeableProbe::resampled() const {
    std::vector<double> z = base;
    z[coordinate] = replacement;
    return z;
}

SampleAssignment sample(const DistList& dists, uint64_t seed, uint64_t draw_index) {
    Rng rng(derive_seed(seed, draw_index));
    SampleAssignment s{std::vector<double>(dists.size()), seed, draw_index};
    for (size_t i = 0; i < dists.size(); ++i) s.values[i] = rng.draw(dists[i]);
    return s;
}

ExchangeableProbe resample_coordinate(const std::vector<double>& z, int i, const DistList& dists, uint64_t seed) {
    if (i < 0 || i >= static_cast<int>(z.size())) throw std::out_of_range("resample coordinate out of range");
    Rng rng(derive_seed(seed, static_cast<uint64_t>(i)));
    return ExchangeableProbe{z, i, rng.draw(dists.at(i))};
}

// ---------------------------------------------------------------- checkers

namespace {

double scale_of(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double s = 1.0;
    if (a.size()) s = std::max(s, a.cwiseAbs().maxCoeff());
    if (b.size()) s = std::max(s, b.cwiseAbs().maxCoeff());
    return s;
}

void require_symmetric(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + " must be square");
    double s = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * s)
        throw std::invalid_argument(std::string(what) + " must be symmetric");
}

double trace_power(const Eigen::MatrixXd& m, int t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) s += std::pow(es.eigenvalues()(i), t);
    return s;
}

}  // namespace

double loewner_slack(const Eigen::MatrixXd& lower, const Eigen::MatrixXd& upper) {
    Eigen::MatrixXd d = upper - lower;
    d = 0.5 * (d + d.transpose());
    return min_eigenvalue(d) / scale_of(lower, upper);
}

double scalar_slack(double lhs, double rhs) {
    return (rhs - lhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, int q) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m.rows(), m.cols());
    for (int i = 0; i < q; ++i) r = r * m;
    return r;
}

CheckResult check_square_sum(const std::vector<Eigen::MatrixXd>& mats) {
    if (mats.empty()) return {};
    const auto d = mats[0].rows();
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d), sq = Eigen::MatrixXd::Zero(d, d);
    for (auto& x : mats) {
        require_symmetric(x, "square-sum input");
        sum += x;
        sq += x * x;
    }
    Eigen::MatrixXd lhs = sum * sum, rhs = static_cast<double>(mats.size()) * sq;
    CheckResult r;
    r.slack = loewner_slack(lhs, rhs);
    r.lhs = lhs.trace();
    r.rhs = rhs.trace();
    r.holds = r.slack >= kSlackTol;
    return r;
}

CheckResult check_trace_power_sum(const Eigen::MatrixXd& x, const std::vector<Eigen::MatrixXd>& parts, int t) {
    if (t < 1) throw std::invalid_argument("trace power needs t >= 1");
    require_symmetric(x, "trace-power input");
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    double rhs = 0.0;
    for (auto& p : parts) {
        require_symmetric(p, "trace-power part");
        if (min_eigenvalue(p) < -1e-8 * scale_of(p, p)) throw std::invalid_argument("trace-power part is not PSD");
        total += p;
        rhs += trace_power(p, t);
    }
    if (min_eigenvalue(x) < -1e-8 * scale_of(x, x)) throw std::invalid_argument("trace-power input is not PSD");
    if (loewner_slack(x, total) < kSlackTol) throw std::invalid_argument("precondition X <= sum of parts violated");
    rhs *= std::pow(static_cast<double>(parts.size()), t - 1);
    CheckResult r;
    r.lhs = trace_power(x, t);
    r.rhs = rhs;
    r.slack = scalar_slack(r.lhs, r.rhs);
    r.holds = r.slack >= kSlackTol;
    return r;
}

// |M|^q through the eigendecomposition of a symmetric M.
Eigen::MatrixXd abs_power(const Eigen::MatrixXd& m, int q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd d = es.eigenvalues().array().abs().pow(q);
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

CheckResult check_mvt_trace(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c, int q,
                            double s) {
    if (q < 1 || !(s > 0.0)) throw std::invalid_argument("mean value trace check needs q >= 1 and s > 0");
    require_symmetric(a, "A");
    require_symmetric(b, "B");
    require_symmetric(c, "C");
    Eigen::MatrixXd diff = a - b;
    CheckResult r;
    r.lhs = (c * (matrix_power(a, q) - matrix_power(b, q))).trace();
    r.rhs = q / 4.0 * ((s * diff * diff + c * c / s) * (abs_power(a, q - 1) + abs_power(b, q - 1))).trace();
    r.slack = scalar_slack(r.lhs, r.rhs);
    r.holds = r.slack >= kSlackTol;
    return r;
}

CheckResult check_jensen_operator(const std::vector<Eigen::MatrixXd>& bs, const std::vector<Eigen::MatrixXd>& as,
                                  int t) {
    if (bs.size() != as.size() || bs.empty()) throw std::invalid_argument("jensen check needs matching families");
    const auto d = as[0].cols();
    Eigen::MatrixXd contraction = Eigen::MatrixXd::Zero(d, d), inner = Eigen::MatrixXd::Zero(d, d);
    double rhs = 0.0;
    for (size_t i = 0; i < as.size(); ++i) {
        require_symmetric(bs[i], "B_i");
        if (min_eigenvalue(bs[i]) < -1e-8 * scale_of(bs[i], bs[i])) throw std::invalid_argument("B_i is not PSD");
        contraction += as[i].transpose() * as[i];
        inner += as[i].transpose() * bs[i] * as[i];
        rhs += (as[i].transpose() * matrix_power(bs[i], t) * as[i]).trace();
    }
    if (loewner_slack(contraction, Eigen::MatrixXd::Identity(d, d)) < kSlackTol)
        throw std::invalid_argument("contraction precondition violated");
    inner = 0.5 * (inner + inner.transpose());
    CheckResult r;
    r.lhs = trace_power(inner, t);
    r.rhs = rhs;
    r.slack = scalar_slack(r.lhs, r.rhs);
    r.holds = r.slack >= kSlackTol;
    return r;
}

}  // namespace gmlab
