#include "raretrend/twosample.hpp"

#include <cmath>
#include <stdexcept>

namespace raretrend {
namespace {

void check_input(const TwoSampleInput& in) {
    if (!(in.total_time > 0.0))
        throw std::invalid_argument("two_sample: total_time must be positive");
    if (!(in.split > 0.0 && in.split < 1.0))
        throw std::invalid_argument("two_sample: split must lie in (0, 1)");
    if (!(in.k1 >= 0.0) || !(in.k2 >= 0.0))
        throw std::invalid_argument("two_sample: counts must be nonnegative");
}

}  // namespace

ObservationSeries two_sample_series(const TwoSampleInput& in) {
    const double T = in.total_time;
    const double T1 = in.split * T;
    const double T2 = T - T1;
    ObservationSeries series;
    series.intervals = {{0.5 * T1, T1, in.k1}, {T1 + 0.5 * T2, T2, in.k2}};
    return series;
}

FitResult two_sample_fit(const TwoSampleInput& in, const SolverSettings& settings) {
    check_input(in);
    if (in.k1 + in.k2 <= 0.0)
        throw DegenerateDataError("two_sample_fit: both counts are zero");
    if (in.k1 == 0.0 || in.k2 == 0.0)
        throw BoundaryMleError("two_sample_fit: one empty cell pushes the trend to infinity");

    if (in.split != 0.5)
        return fit_mle(two_sample_series(in), settings);

    // Equal split: the saturated model gives beta in closed form. Written
    // as a log difference so that swapping the counts negates beta exactly.
    const double T = in.total_time;
    const double k = in.k1 + in.k2;
    const double beta = (2.0 / T) * (std::log(in.k1) - std::log(in.k2));

    // Centered cell times are -/+ T/4.
    const double e1 = std::exp(beta * (T / 4.0));   // exp(-beta * t1)
    const double e2 = std::exp(-beta * (T / 4.0));  // exp(-beta * t2)
    const double lambda0 = k / (0.5 * T * (e1 + e2));
    const double info = lambda0 * 0.5 * T * (T / 4.0) * (T / 4.0) * (e1 + e2);

    FitResult fit;
    fit.lambda0_hat = lambda0;
    fit.beta_hat = beta;
    fit.information = info;
    fit.sigma = 1.0 / std::sqrt(info);
    fit.time_origin = 0.5 * T;
    fit.mode = FitMode::ClassicalMle;
    return fit;
}

FitResult two_sample_bayes(const TwoSampleInput& in, double a1, double a2,
                           const SolverSettings& settings) {
    check_input(in);
    if (!(a1 >= 0.0) || !(a2 >= 0.0))
        throw std::invalid_argument("two_sample_bayes: pseudo-counts must be nonnegative");
    TwoSampleInput augmented = in;
    augmented.k1 += a1;
    augmented.k2 += a2;
    FitResult fit = two_sample_fit(augmented, settings);
    fit.mode = FitMode::BayesMap;
    return fit;
}

std::pair<double, double> cell_means(const TwoSampleInput& in) {
    // Saturated model: the fitted means coincide with the observed counts,
    // including at the boundary of the mean parametrization.
    return {in.k1, in.k2};
}

}  // namespace raretrend
