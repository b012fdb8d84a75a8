#pragma once

// Monte Carlo validation of the asymptotics the estimator relies on:
// empirical confidence-interval coverage, size of the one-sided trend test,
// and estimator bias, measured on series simulated from the model itself.
//
// Replicates are independent and keyed by (seed, replicate index) through a
// counter-based generator, so the experiment is bit-reproducible under any
// degree of parallelism. coverage_experiment runs the replicate loop with
// OpenMP when available; coverage_experiment_serial is the plain loop kept
// as a reference, and the two must agree exactly.

#include <cstdint>
#include <vector>

#include "raretrend/model.hpp"

namespace raretrend {

struct LayoutInterval {
    double center = 0.0;
    double length = 1.0;
};

// n consecutive intervals of the given length starting at time zero.
std::vector<LayoutInterval> uniform_layout(int n, double length);

struct SimulationPlan {
    double true_lambda0 = 1.0;  // intensity per time unit at t = 0
    double true_beta = 0.0;
    std::vector<LayoutInterval> layout;
    long long replications = 1;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument on a malformed plan.
void validate_plan(const SimulationPlan& plan);

struct CoverageReport {
    long long replications_run = 0;    // replications minus degenerate_count
    long long degenerate_count = 0;    // zero-count or boundary replicates
    double empirical_coverage = 0.0;   // fraction of intervals containing true_beta
    double empirical_rejection_rate = 0.0;  // fraction with u_conf > 0
    double mean_beta_hat = 0.0;
    double stddev_beta_hat = 0.0;
    double mean_sigma = 0.0;
};

// Draws K_i ~ Poisson(lambda0 * T_i * exp(-beta * t_i)) for one replicate.
// Deterministic in (plan.seed, replicate_index).
ObservationSeries simulate_series(const SimulationPlan& plan, long long replicate_index);

// For each replicate: simulate, fit, interval, test. Degenerate replicates
// (no events, or all events in one extreme interval) are counted and
// excluded from the averages rather than biasing them.
CoverageReport coverage_experiment(const SimulationPlan& plan);
CoverageReport coverage_experiment_serial(const SimulationPlan& plan);

}  // namespace raretrend
