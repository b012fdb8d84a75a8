#pragma once

// Domain types and time-axis conventions for trend analysis of rare-event
// count series. A series is a list of non-overlapping time intervals, each
// carrying an event count; the estimators in estimate.hpp fit an exponential
// intensity trend to such a series.
//
// All types are immutable values after construction and safe to share
// across threads.

#include <cstddef>
#include <string>
#include <vector>

namespace raretrend {

// One observation cell: the interval is centered at `center`, spans
// `length` time units and saw `count` events. Counts are integers at
// ingestion; prior augmentation may turn them into nonnegative reals.
struct IntervalRecord {
    double center = 0.0;
    double length = 1.0;
    double count = 0.0;
};

struct ObservationSeries {
    std::vector<IntervalRecord> intervals;
    std::string time_unit = "year";  // label only, never interpreted

    std::size_t size() const { return intervals.size(); }

    double total_count() const;
    // Earliest interval start / latest interval end over all records.
    double window_start() const;
    double window_end() const;
};

enum class WeightMode { Augment, Blend };

struct PriorEntry {
    double tau = 0.0;  // prior interval center, must align with the series
    double a = 0.0;    // pseudo-count, >= 0; all zero = non-informative
};

// Conjugate prior acting as `a_i` extra events at times `tau_i`.
// Augment mode replaces counts by k_i + a_i; Blend mode by
// q_i*k_i + (1-q_i)*a_i and requires the weights vector.
struct PriorSpec {
    std::vector<PriorEntry> entries;
    WeightMode weight_mode = WeightMode::Augment;
    std::vector<double> weights;  // q_i in [0,1], used by Blend only
};

enum class FitMode { ClassicalMle, BayesMap };

struct FitResult {
    double lambda0_hat = 0.0;  // intensity per time unit at the origin
    double beta_hat = 0.0;     // trend rate; > 0 means decreasing counts
    double information = 0.0;  // log-likelihood curvature in beta, at the origin
    // Standard error of beta_hat. Taken from the information in the
    // window-midpoint frame so that intervals and tests do not move with
    // the reporting origin; equals information^(-1/2) at the default origin.
    double sigma = 0.0;
    double time_origin = 0.0;  // where t = 0 lives on the input time axis
    FitMode mode = FitMode::ClassicalMle;
};

enum class IntervalKind { Confidence, HpdApprox };

struct IntervalEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double alpha = 0.0;     // tail probability per side
    double coverage = 0.0;  // 1 - 2*alpha
    IntervalKind kind = IntervalKind::Confidence;
};

enum class TrendDecision { SignificantDecrease, SignificantIncrease, Inconclusive };

// One-sided bounds and the decision they imply: u_conf > 0 establishes a
// significant decrease, o_conf < 0 a significant increase.
struct TrendVerdict {
    double u_conf = 0.0;
    double o_conf = 0.0;
    TrendDecision decision = TrendDecision::Inconclusive;
};

struct Violation {
    std::size_t index = 0;  // offending record (0 for series-level rules)
    std::string rule;
};

// Checks every series invariant; returns one entry per broken rule and
// never throws. An empty result means the series is well formed.
std::vector<Violation> validate(const ObservationSeries& series);

// Shifts every interval center by -origin; lengths and counts unchanged.
ObservationSeries recenter(const ObservationSeries& series, double origin);

// Midpoint of the total observation window. The canonical fit origin:
// beta is invariant under the choice, lambda0 and the information are not.
double default_origin(const ObservationSeries& series);

// Spacing slack allowed by the non-overlap check, in time units.
inline constexpr double kOverlapTolerance = 1e-9;

}  // namespace raretrend
