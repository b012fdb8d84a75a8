#pragma once

// Closed-form before/after comparison: one observation window of total
// length T split into two sub-periods. With two cells and two parameters
// the model is saturated, so the fitted cell means reproduce the observed
// counts and, for an equal split, the trend rate has the closed form
// (2/T) ln(k1/k2). Unequal splits go through the general solver.

#include <utility>

#include "raretrend/estimate.hpp"
#include "raretrend/model.hpp"

namespace raretrend {

struct TwoSampleInput {
    double k1 = 0.0;        // events in the first period
    double k2 = 0.0;        // events in the second period
    double total_time = 0;  // T = T1 + T2
    double split = 0.5;     // T1 = split * T, in (0, 1)
};

// Classical fit. Times are centered on the window midpoint, placing the
// cells at -(1-split)*T/2 and +split*T/2; time_origin is recorded as T/2
// on a [0, T] axis. Throws DegenerateDataError when both counts are zero
// and BoundaryMleError when exactly one is.
FitResult two_sample_fit(const TwoSampleInput& input, const SolverSettings& settings = {});

// Same fit on counts (k1 + a1, k2 + a2); mode = BayesMap.
FitResult two_sample_bayes(const TwoSampleInput& input, double a1, double a2,
                           const SolverSettings& settings = {});

// Fitted per-cell expected counts. Two parameters against two cells leave
// no slack: the model is saturated and the means equal the observed counts.
std::pair<double, double> cell_means(const TwoSampleInput& input);

// The two cells as an ObservationSeries on a [0, T] axis.
ObservationSeries two_sample_series(const TwoSampleInput& input);

}  // namespace raretrend
