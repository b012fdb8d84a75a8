#include "raretrend/simcheck.hpp"

#include <cmath>
#include <stdexcept>

#include "raretrend/estimate.hpp"
#include "raretrend/rng.hpp"

namespace raretrend {

std::vector<LayoutInterval> uniform_layout(int n, double length) {
    std::vector<LayoutInterval> layout;
    layout.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
    for (int i = 0; i < n; ++i)
        layout.push_back({(static_cast<double>(i) + 0.5) * length, length});
    return layout;
}

void validate_plan(const SimulationPlan& plan) {
    if (!(plan.true_lambda0 > 0.0))
        throw std::invalid_argument("plan: true_lambda0 must be positive");
    if (!std::isfinite(plan.true_beta))
        throw std::invalid_argument("plan: true_beta must be finite");
    if (plan.replications < 1)
        throw std::invalid_argument("plan: replications must be at least 1");
    if (!(plan.alpha > 0.0 && plan.alpha < 0.5))
        throw std::invalid_argument("plan: alpha must lie in (0, 0.5)");
    if (plan.layout.empty())
        throw std::invalid_argument("plan: layout must not be empty");
    for (std::size_t i = 0; i < plan.layout.size(); ++i) {
        if (!(plan.layout[i].length > 0.0))
            throw std::invalid_argument("plan: layout lengths must be positive");
        if (i > 0 && !(plan.layout[i].center > plan.layout[i - 1].center))
            throw std::invalid_argument("plan: layout centers must be increasing");
    }
}

ObservationSeries simulate_series(const SimulationPlan& plan, long long replicate_index) {
    CounterRng rng(plan.seed, static_cast<std::uint64_t>(replicate_index));
    ObservationSeries series;
    series.intervals.reserve(plan.layout.size());
    for (const auto& cell : plan.layout) {
        const double mean =
            plan.true_lambda0 * cell.length * std::exp(-plan.true_beta * cell.center);
        const double count = static_cast<double>(poisson_sample(rng, mean));
        series.intervals.push_back({cell.center, cell.length, count});
    }
    return series;
}

namespace {

struct ReplicateOutcome {
    bool degenerate = false;
    bool covered = false;
    bool rejected = false;
    double beta_hat = 0.0;
    double sigma = 0.0;
};

ReplicateOutcome run_replicate(const SimulationPlan& plan, long long index) {
    ReplicateOutcome out;
    const ObservationSeries series = simulate_series(plan, index);
    FitResult fit;
    try {
        fit = fit_mle(series);
    } catch (const DegenerateDataError&) {
        out.degenerate = true;
        return out;
    } catch (const BoundaryMleError&) {
        out.degenerate = true;
        return out;
    }
    const IntervalEstimate est = confidence_interval(fit, plan.alpha);
    out.beta_hat = fit.beta_hat;
    out.sigma = fit.sigma;
    out.covered = est.lower <= plan.true_beta && plan.true_beta <= est.upper;
    out.rejected = est.lower > 0.0;  // u_conf > 0
    return out;
}

// Fixed-order reduction shared by the serial and parallel paths; running
// it over the same outcome array makes the two paths bit-identical.
CoverageReport reduce(const std::vector<ReplicateOutcome>& outcomes) {
    CoverageReport report;
    long long covered = 0, rejected = 0;
    double mean_beta = 0.0, m2_beta = 0.0, sum_sigma = 0.0;
    long long m = 0;
    for (const auto& out : outcomes) {
        if (out.degenerate) {
            ++report.degenerate_count;
            continue;
        }
        ++m;
        covered += out.covered ? 1 : 0;
        rejected += out.rejected ? 1 : 0;
        const double d = out.beta_hat - mean_beta;
        mean_beta += d / static_cast<double>(m);
        m2_beta += d * (out.beta_hat - mean_beta);
        sum_sigma += out.sigma;
    }
    report.replications_run = m;
    if (m > 0) {
        report.empirical_coverage = static_cast<double>(covered) / static_cast<double>(m);
        report.empirical_rejection_rate =
            static_cast<double>(rejected) / static_cast<double>(m);
        report.mean_beta_hat = mean_beta;
        report.stddev_beta_hat =
            m > 1 ? std::sqrt(m2_beta / static_cast<double>(m - 1)) : 0.0;
        report.mean_sigma = sum_sigma / static_cast<double>(m);
    }
    return report;
}

}  // namespace

CoverageReport coverage_experiment(const SimulationPlan& plan) {
    validate_plan(plan);
    std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(plan.replications));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (long long i = 0; i < plan.replications; ++i)
        outcomes[static_cast<std::size_t>(i)] = run_replicate(plan, i);
    return reduce(outcomes);
}

CoverageReport coverage_experiment_serial(const SimulationPlan& plan) {
    validate_plan(plan);
    std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(plan.replications));
    for (long long i = 0; i < plan.replications; ++i)
        outcomes[static_cast<std::size_t>(i)] = run_replicate(plan, i);
    return reduce(outcomes);
}

}  // namespace raretrend
