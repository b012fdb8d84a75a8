#pragma once

// Conjugate-prior Bayesian layer. The prior has the same functional form as
// the likelihood and acts exactly like extra observed events: the posterior
// mode is the maximum-likelihood fit of the augmented data, and the
// approximate HPD interval reuses the Wald construction around it.

#include <stdexcept>

#include "raretrend/estimate.hpp"
#include "raretrend/model.hpp"

namespace raretrend {

// Prior does not line up with the series (entry count or centers differ).
class PriorMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Conjugacy requires the prior centers tau_i to equal the series centers.
inline constexpr double kPriorAlignTolerance = 1e-9;

// Applies the prior to the counts: Augment mode yields k_i + a_i, Blend
// mode q_i*k_i + (1-q_i)*a_i. Centers and lengths pass through untouched.
ObservationSeries augment(const ObservationSeries& series, const PriorSpec& prior);

// Posterior-mode fit: fit_mle on the augmented series, with the
// information likewise computed on the augmented data.
FitResult fit_map(const ObservationSeries& series, const PriorSpec& prior,
                  const SolverSettings& settings = {});
FitResult fit_map_at(const ObservationSeries& series, const PriorSpec& prior,
                     double origin, const SolverSettings& settings = {});

// Normal approximation of the highest-posterior-density interval: the same
// arithmetic as confidence_interval on the augmented-data fit. Requires a
// BayesMap fit.
IntervalEstimate hpd_interval(const FitResult& fit, double alpha);

}  // namespace raretrend
