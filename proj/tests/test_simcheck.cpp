#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "raretrend/simcheck.hpp"

using namespace raretrend;

namespace {

SimulationPlan base_plan() {
    SimulationPlan plan;
    plan.true_lambda0 = 5.0;
    plan.true_beta = 0.0;
    plan.layout = uniform_layout(10, 1.0);
    plan.replications = 2000;
    plan.alpha = 0.05;
    plan.seed = 42;
    return plan;
}

bool reports_equal(const CoverageReport& a, const CoverageReport& b) {
    return a.replications_run == b.replications_run &&
           a.degenerate_count == b.degenerate_count &&
           a.empirical_coverage == b.empirical_coverage &&
           a.empirical_rejection_rate == b.empirical_rejection_rate &&
           a.mean_beta_hat == b.mean_beta_hat &&
           a.stddev_beta_hat == b.stddev_beta_hat && a.mean_sigma == b.mean_sigma;
}

}  // namespace

TEST_CASE("uniform_layout lays consecutive intervals from zero") {
    const auto layout = uniform_layout(4, 2.0);
    REQUIRE(layout.size() == 4);
    CHECK(layout[0].center == doctest::Approx(1.0));
    CHECK(layout[3].center == doctest::Approx(7.0));
    CHECK(layout[2].length == 2.0);
}

TEST_CASE("plan validation rejects malformed plans") {
    auto plan = base_plan();
    plan.replications = 0;
    CHECK_THROWS_AS(validate_plan(plan), std::invalid_argument);
    plan = base_plan();
    plan.true_lambda0 = 0.0;
    CHECK_THROWS_AS(validate_plan(plan), std::invalid_argument);
    plan = base_plan();
    plan.layout.clear();
    CHECK_THROWS_AS(validate_plan(plan), std::invalid_argument);
    plan = base_plan();
    plan.alpha = 0.5;
    CHECK_THROWS_AS(validate_plan(plan), std::invalid_argument);
    plan = base_plan();
    plan.layout[3].length = -1.0;
    CHECK_THROWS_AS(validate_plan(plan), std::invalid_argument);
}

TEST_CASE("simulation is a pure function of seed and replicate index") {
    const auto plan = base_plan();
    const auto a = simulate_series(plan, 17);
    const auto b = simulate_series(plan, 17);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.intervals[i].count == b.intervals[i].count);

    const auto c = simulate_series(plan, 18);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        any_diff = any_diff || a.intervals[i].count != c.intervals[i].count;
    CHECK(any_diff);
}

TEST_CASE("a strong positive trend empties the late intervals") {
    SimulationPlan plan = base_plan();
    plan.true_beta = 50.0;  // late cells have means far below 1e-6
    const auto series = simulate_series(plan, 3);
    CHECK(series.intervals.back().count == 0.0);
    CHECK(series.intervals[series.size() - 2].count == 0.0);
}

// Poisson moment oracle over replicates, cell by cell.
TEST_CASE("simulated counts match the model intensities") {
    SimulationPlan plan;
    plan.true_lambda0 = 3.0;
    plan.true_beta = 0.1;
    plan.layout = uniform_layout(4, 1.0);
    plan.replications = 10000;
    plan.seed = 7;

    std::vector<double> sums(plan.layout.size(), 0.0);
    for (long long rep = 0; rep < plan.replications; ++rep) {
        const auto series = simulate_series(plan, rep);
        for (std::size_t i = 0; i < series.size(); ++i)
            sums[i] += series.intervals[i].count;
    }
    for (std::size_t i = 0; i < plan.layout.size(); ++i) {
        const double mean = plan.true_lambda0 * plan.layout[i].length *
                            std::exp(-plan.true_beta * plan.layout[i].center);
        const double sample_mean = sums[i] / static_cast<double>(plan.replications);
        CHECK(std::fabs(sample_mean - mean) <=
              3.0 * std::sqrt(mean / static_cast<double>(plan.replications)));
    }
}

TEST_CASE("parallel and serial experiments produce identical reports") {
    const auto plan = base_plan();
    const auto parallel = coverage_experiment(plan);
    const auto serial = coverage_experiment_serial(plan);
    CHECK(reports_equal(parallel, serial));
    // and a second parallel run reproduces itself
    CHECK(reports_equal(parallel, coverage_experiment(plan)));
}

TEST_CASE("report bookkeeping is consistent") {
    auto plan = base_plan();
    plan.true_lambda0 = 0.05;  // plenty of degenerate replicates
    plan.replications = 500;
    const auto report = coverage_experiment(plan);
    CHECK(report.replications_run + report.degenerate_count == plan.replications);
    CHECK(report.degenerate_count > 0);
    CHECK(report.empirical_coverage >= 0.0);
    CHECK(report.empirical_coverage <= 1.0);
    CHECK(report.empirical_rejection_rate >= 0.0);
    CHECK(report.empirical_rejection_rate <= 1.0);
}

TEST_CASE("coverage sits near nominal under the null") {
    auto plan = base_plan();
    plan.replications = 4000;
    const auto report = coverage_experiment(plan);
    CHECK(report.degenerate_count == 0);
    CHECK(report.empirical_coverage > 0.87);
    CHECK(report.empirical_coverage < 0.93);
    CHECK(report.empirical_rejection_rate <= 0.07);
}

TEST_CASE("spread of the estimates matches the reported standard error") {
    SimulationPlan plan;
    plan.true_lambda0 = 50.0;
    plan.true_beta = 0.02;
    plan.layout = uniform_layout(10, 1.0);
    plan.replications = 3000;
    plan.alpha = 0.05;
    plan.seed = 11;
    const auto report = coverage_experiment(plan);
    CHECK(report.degenerate_count == 0);
    CHECK(std::fabs(report.mean_beta_hat - plan.true_beta) <=
          2.0 * report.stddev_beta_hat / std::sqrt(3000.0));
    CHECK(std::fabs(report.stddev_beta_hat - report.mean_sigma) <=
          0.10 * report.mean_sigma);
}

TEST_CASE("rejection rate climbs with the true trend") {
    double prev = -1.0;
    for (double beta : {0.0, 0.05, 0.1, 0.2}) {
        SimulationPlan plan = base_plan();
        plan.true_beta = beta;
        plan.replications = 5000;
        const auto report = coverage_experiment(plan);
        CHECK(report.empirical_rejection_rate >= prev);
        prev = report.empirical_rejection_rate;
    }
    CHECK(prev > 0.5);  // power at beta = 0.2 is substantial
}
