#include "raretrend/bayes.hpp"

#include <cmath>
#include <string>

namespace raretrend {

ObservationSeries augment(const ObservationSeries& series, const PriorSpec& prior) {
    const std::size_t n = series.size();
    if (prior.entries.size() != n)
        throw PriorMismatchError("augment: prior has " +
                                 std::to_string(prior.entries.size()) +
                                 " entries for a series of length " + std::to_string(n));
    if (prior.weight_mode == WeightMode::Blend && prior.weights.size() != n)
        throw std::invalid_argument("augment: blend mode requires one weight per entry");

    for (std::size_t i = 0; i < n; ++i) {
        const auto& entry = prior.entries[i];
        if (!(entry.a >= 0.0))
            throw std::invalid_argument("augment: pseudo-count a[" + std::to_string(i) +
                                        "] must be nonnegative");
        if (std::fabs(entry.tau - series.intervals[i].center) > kPriorAlignTolerance)
            throw PriorMismatchError("augment: prior center tau[" + std::to_string(i) +
                                     "] does not match the series center");
        if (prior.weight_mode == WeightMode::Blend) {
            const double q = prior.weights[i];
            if (!(q >= 0.0 && q <= 1.0))
                throw std::invalid_argument("augment: weight q[" + std::to_string(i) +
                                            "] must lie in [0, 1]");
        }
    }

    ObservationSeries out = series;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = series.intervals[i].count;
        const double a = prior.entries[i].a;
        if (prior.weight_mode == WeightMode::Augment) {
            out.intervals[i].count = k + a;
        } else {
            const double q = prior.weights[i];
            out.intervals[i].count = q * k + (1.0 - q) * a;
        }
    }
    return out;
}

FitResult fit_map(const ObservationSeries& series, const PriorSpec& prior,
                  const SolverSettings& settings) {
    return fit_map_at(series, prior, default_origin(series), settings);
}

FitResult fit_map_at(const ObservationSeries& series, const PriorSpec& prior,
                     double origin, const SolverSettings& settings) {
    FitResult fit = fit_mle_at(augment(series, prior), origin, settings);
    fit.mode = FitMode::BayesMap;
    return fit;
}

IntervalEstimate hpd_interval(const FitResult& fit, double alpha) {
    if (fit.mode != FitMode::BayesMap)
        throw std::invalid_argument("hpd_interval: fit must be a posterior-mode fit");
    IntervalEstimate est = confidence_interval(fit, alpha);
    est.kind = IntervalKind::HpdApprox;
    return est;
}

}  // namespace raretrend
