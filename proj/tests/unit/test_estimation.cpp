#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "gmlab/estimation.hpp"
#include "gmlab/parallel.hpp"

using namespace gmlab;

TEST_SUITE("estimation") {

TEST_CASE("sampling is reproducible") {
    const DistList rad = testing::rademacher(16);
    const auto a = sample(rad, 7, 3), b = sample(rad, 7, 3);
    CHECK(a.values == b.values);
    for (double v : a.values) CHECK(std::abs(v) == 1.0);
}

TEST_CASE("biased sign mean lies in the CLT band") {
    const int draws = 100000;
    const DistList one{VariableDistribution::p_biased(0.25)};
    double sum = 0;
    for (int i = 0; i < draws; ++i) sum += sample(one, 12, i).values[0];
    CHECK(std::abs(sum / draws) < 3.0 / std::sqrt(draws));
}

TEST_CASE("exact expectation is worker-count independent") {
    const DistList d = uniform_dists(12, VariableDistribution::p_biased(0.3));
    auto run = [&] {
        return exact_expectation<double>(d, [](const std::vector<double>& z) {
            double s = 0;
            for (size_t i = 0; i < z.size(); ++i) s += std::sin(z[i] * (i + 1));
            return s * s;
        });
    };
    set_worker_count(1);
    const double a = run();
    set_worker_count(4);
    const double b = run();
    set_worker_count(1);
    CHECK(a == b);
}

TEST_CASE("budget refuses oversized enumerations") {
    EnumerationBudget small;
    small.max_slots = 3;
    CHECK_THROWS_AS(check_budget(testing::rademacher(4), small), BudgetError);
}

TEST_CASE("elementary matrix inequalities") {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << 1, 0.5, 0.5, 1;
    b << 0, 1, 1, 0;
    CHECK(check_square_sum({a, b}).holds);
    CHECK(check_mvt_trace(a, b, a, 3, 1.0).holds);
    CHECK(check_mvt_trace(a, b, b, 4, 0.1).holds);
    const Eigen::MatrixXd half = Eigen::MatrixXd::Identity(2, 2) * 0.5;
    CHECK(check_jensen_operator({a, Eigen::MatrixXd::Identity(2, 2)}, {half, half}, 2).holds);
    CHECK_THROWS(check_jensen_operator({b}, {half}, 2));
    CHECK(loewner_slack(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2) * 2) >= 0);
    CHECK(loewner_slack(Eigen::MatrixXd::Identity(2, 2) * 2, Eigen::MatrixXd::Identity(2, 2)) < 0);
}

TEST_CASE("absolute matrix power") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 2, 2, 0;
    CHECK((abs_power(m, 2) - matrix_power(m, 2)).norm() < 1e-12);
    CHECK((abs_power(m, 1) - Eigen::MatrixXd::Identity(2, 2) * 2).norm() < 1e-12);
}

}
