#include "raretrend/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "raretrend/normal.hpp"

namespace raretrend {
namespace {

// Expansion stops once |beta| * max|t| would reach 500; well inside the
// range of exp while far beyond any interpretable trend rate.
constexpr double kBracketExponentCap = 500.0;

struct Moments {
    double sum_k = 0.0;
    double sum_kt = 0.0;  // in the solve frame
};

// The score (sum k t)(sum T e^{-bt}) - (sum k)(sum t T e^{-bt}) factored as
//   sum(k) * sum_j T_j e^{-b t_j} (tbar_k - t_j),  tbar_k = sum(kt)/sum(k).
// Same value, but the exponentially large terms no longer cancel pairwise,
// which matters when the bracket search probes extreme beta on boundary
// data (all events in one extreme interval).
double score_shifted(const ObservationSeries& series, const Moments& m,
                     double shift, double beta) {
    const double tbar = m.sum_kt / m.sum_k;
    double acc = 0.0;
    for (const auto& rec : series.intervals) {
        const double t = rec.center - shift;
        acc += rec.length * std::exp(-beta * t) * (tbar - t);
    }
    return m.sum_k * acc;
}

}  // namespace

double log_likelihood(const ObservationSeries& series, double lambda0, double beta) {
    if (!(lambda0 > 0.0))
        throw std::domain_error("log_likelihood: lambda0 must be positive");
    double ll = 0.0;
    for (const auto& rec : series.intervals) {
        const double mean_log = std::log(lambda0) - beta * rec.center + std::log(rec.length);
        ll += rec.count * mean_log - std::lgamma(rec.count + 1.0) -
              lambda0 * rec.length * std::exp(-beta * rec.center);
    }
    return ll;
}

double score_beta(const ObservationSeries& series, double beta) {
    Moments m;
    for (const auto& rec : series.intervals) {
        m.sum_k += rec.count;
        m.sum_kt += rec.count * rec.center;
    }
    if (!(m.sum_k > 0.0))
        throw DegenerateDataError("score_beta: total event count is zero");
    return score_shifted(series, m, 0.0, beta);
}

double fisher_info(const ObservationSeries& series, double lambda0, double beta) {
    if (!(lambda0 > 0.0))
        throw std::domain_error("fisher_info: lambda0 must be positive");
    double info = 0.0;
    for (const auto& rec : series.intervals) {
        const double t = rec.center;
        info += lambda0 * rec.length * t * t * std::exp(-beta * t);
    }
    return info;
}

FitResult fit_mle(const ObservationSeries& series, const SolverSettings& settings) {
    return fit_mle_at(series, default_origin(series), settings);
}

FitResult fit_mle_at(const ObservationSeries& series, double origin,
                     const SolverSettings& settings) {
    if (!(settings.tolerance > 0.0) || settings.max_iterations < 1)
        throw std::invalid_argument("fit_mle: bad solver settings");
    if (series.size() < 2)
        throw DegenerateDataError("fit_mle: need at least two intervals");

    Moments m;  // relative to the window midpoint, where the solve runs
    const double mid = default_origin(series);
    double t_abs_max = 0.0;
    double sum_t_len = 0.0;
    for (const auto& rec : series.intervals) {
        const double t = rec.center - mid;
        m.sum_k += rec.count;
        m.sum_kt += rec.count * t;
        t_abs_max = std::max(t_abs_max, std::fabs(t));
        sum_t_len += rec.length;
    }
    if (!(m.sum_k > 0.0))
        throw DegenerateDataError("fit_mle: total event count is zero");
    if (!(t_abs_max > 0.0))
        throw DegenerateDataError("fit_mle: intervals share a single center");

    const auto g = [&](double beta) { return score_shifted(series, m, mid, beta); };

    // Bracket the root, doubling outward from the initial halfwidth.
    const double cap = kBracketExponentCap / t_abs_max;
    double h = std::min(settings.initial_bracket_halfwidth, cap);
    double lo = -h, hi = h;
    double glo = g(lo), ghi = g(hi);
    const auto bracketed = [&] {
        return (glo < 0.0 && ghi > 0.0) || (glo > 0.0 && ghi < 0.0) ||
               glo == 0.0 || ghi == 0.0;
    };
    while (!bracketed()) {
        h *= 2.0;
        if (h > cap)
            throw BoundaryMleError(
                "fit_mle: no finite trend estimate (all events in one extreme interval)");
        lo = -h;
        hi = h;
        glo = g(lo);
        ghi = g(hi);
    }

    // Hybrid search: secant steps against the bracket, a plain bisection
    // every other iteration so the width provably shrinks.
    const double g_scale = m.sum_k * t_abs_max * sum_t_len;
    double beta;
    if (glo == 0.0) {
        beta = lo;
    } else if (ghi == 0.0) {
        beta = hi;
    } else {
        beta = 0.5 * (lo + hi);
        for (int it = 0; it < settings.max_iterations; ++it) {
            double x;
            if (it % 2 == 0 && ghi != glo) {
                x = hi - ghi * (hi - lo) / (ghi - glo);
                if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
            } else {
                x = 0.5 * (lo + hi);
            }
            const double gx = g(x);
            beta = x;
            if (std::fabs(gx) <= settings.tolerance * g_scale) break;
            if ((gx < 0.0) == (glo < 0.0)) {
                lo = x;
                glo = gx;
            } else {
                hi = x;
                ghi = gx;
            }
            if (hi - lo <= settings.tolerance) {
                beta = 0.5 * (lo + hi);
                break;
            }
        }
    }

    // lambda0 and the information in the midpoint frame first. The solve
    // frame also fixes the standard error: inference about beta must not
    // move with an arbitrary reporting origin.
    double denom_mid = 0.0;
    for (const auto& rec : series.intervals)
        denom_mid += rec.length * std::exp(-beta * (rec.center - mid));
    const double lambda0_mid = m.sum_k / denom_mid;
    double info_mid = 0.0;
    for (const auto& rec : series.intervals) {
        const double u = rec.center - mid;
        info_mid += lambda0_mid * rec.length * u * u * std::exp(-beta * u);
    }

    // Map lambda0 and the information to the requested origin frame; at the
    // default (midpoint) origin these reproduce the midpoint values exactly.
    const double lambda0 = lambda0_mid * std::exp(beta * (mid - origin));
    double info = 0.0;
    for (const auto& rec : series.intervals) {
        const double t = rec.center - origin;
        info += lambda0 * rec.length * t * t * std::exp(-beta * t);
    }

    FitResult fit;
    fit.lambda0_hat = lambda0;
    fit.beta_hat = beta;
    fit.information = info;
    fit.sigma =
        info_mid > 0.0 ? 1.0 / std::sqrt(info_mid) : std::numeric_limits<double>::infinity();
    fit.time_origin = origin;
    fit.mode = FitMode::ClassicalMle;
    return fit;
}

IntervalEstimate confidence_interval(const FitResult& fit, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::domain_error("confidence_interval: alpha must lie in (0, 0.5)");
    if (!(fit.information > 0.0) || !std::isfinite(fit.sigma))
        throw std::domain_error("confidence_interval: information must be positive");
    const double half = normal_quantile(1.0 - alpha) * fit.sigma;
    IntervalEstimate est;
    est.lower = fit.beta_hat - half;
    est.upper = fit.beta_hat + half;
    est.alpha = alpha;
    est.coverage = 1.0 - 2.0 * alpha;
    est.kind = IntervalKind::Confidence;
    return est;
}

TrendVerdict trend_test(const FitResult& fit, double alpha) {
    const IntervalEstimate est = confidence_interval(fit, alpha);
    TrendVerdict verdict;
    verdict.u_conf = est.lower;
    verdict.o_conf = est.upper;
    if (verdict.u_conf > 0.0)
        verdict.decision = TrendDecision::SignificantDecrease;
    else if (verdict.o_conf < 0.0)
        verdict.decision = TrendDecision::SignificantIncrease;
    else
        verdict.decision = TrendDecision::Inconclusive;
    return verdict;
}

std::vector<CurvePoint> fitted_curve(const FitResult& fit,
                                     const ObservationSeries& series) {
    std::vector<CurvePoint> out;
    out.reserve(series.size());
    for (const auto& rec : series.intervals) {
        const double t = rec.center - fit.time_origin;
        out.push_back({rec.center,
                       fit.lambda0_hat * rec.length * std::exp(-fit.beta_hat * t)});
    }
    return out;
}

}  // namespace raretrend
