#pragma once

// Maximum-likelihood estimation of the exponential-trend Poisson model
//
//     K_i ~ Poisson(lambda_i),   lambda_i = lambda0 * T_i * exp(-beta * t_i)
//
// for n intervals of arbitrary lengths T_i centered at t_i. The trend rate
// beta solves a one-dimensional score equation; lambda0 then follows in
// closed form. Wald-type confidence intervals and the one-sided trend test
// are built from the observed information in beta.
//
// All functions are pure and reentrant.

#include <stdexcept>
#include <vector>

#include "raretrend/model.hpp"

namespace raretrend {

// Total count is zero, fewer than two intervals, or no distinct centers:
// the trend parameter is not identifiable.
class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The likelihood has no interior maximum in beta (all events sit in the
// single earliest or single latest interval); the root search runs off to
// the bracket cap.
class BoundaryMleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolverSettings {
    double tolerance = 1e-10;  // bracket width and relative score residual
    int max_iterations = 200;
    double initial_bracket_halfwidth = 1.0;  // in beta units
};

// Log likelihood sum_i [k_i (ln lambda0 - beta t_i + ln T_i)
//                       - ln(k_i!) - lambda0 T_i exp(-beta t_i)].
// ln(k!) goes through a log-gamma routine so real-valued (augmented)
// counts are fine. Throws std::domain_error when lambda0 <= 0.
double log_likelihood(const ObservationSeries& series, double lambda0, double beta);

// Profile score for beta:
//   g(beta) = (sum k_i t_i)(sum T_i e^{-beta t_i})
//           - (sum k_i)(sum t_i T_i e^{-beta t_i});
// the MLE of beta is the root of g. Throws DegenerateDataError when the
// total count is zero.
double score_beta(const ObservationSeries& series, double beta);

// Observed information in beta with lambda0 treated as known:
//   I = sum_i lambda0 T_i t_i^2 exp(-beta t_i).
double fisher_info(const ObservationSeries& series, double lambda0, double beta);

// Full fit. The score root is located by geometric bracket expansion
// followed by a hybrid secant/bisection search; lambda0 then comes from
// the closed form sum(k) / sum(T_i e^{-beta t_i}).
//
// Times are taken relative to `origin`; the two-argument overload uses the
// observation-window midpoint. beta does not depend on the origin, while
// lambda0_hat and information are reported in the origin frame. sigma (and
// with it every interval and verdict) always comes from the midpoint-frame
// information, so the inference about beta is origin-invariant too.
FitResult fit_mle(const ObservationSeries& series, const SolverSettings& settings = {});
FitResult fit_mle_at(const ObservationSeries& series, double origin,
                     const SolverSettings& settings = {});

// Two-sided interval beta_hat -/+ z_alpha * sigma with coverage 1 - 2*alpha.
IntervalEstimate confidence_interval(const FitResult& fit, double alpha);

// One-sided bounds u_conf = beta_hat - z_alpha*sigma and
// o_conf = beta_hat + z_alpha*sigma; u_conf > 0 declares a significant
// decrease, o_conf < 0 a significant increase.
TrendVerdict trend_test(const FitResult& fit, double alpha);

struct CurvePoint {
    double center = 0.0;
    double expected = 0.0;
};

// Fitted expected count per interval; their sum reproduces the observed
// total (a consequence of the lambda0 estimating equation).
std::vector<CurvePoint> fitted_curve(const FitResult& fit,
                                     const ObservationSeries& series);

}  // namespace raretrend
