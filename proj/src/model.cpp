#include "raretrend/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace raretrend {

double ObservationSeries::total_count() const {
    double sum = 0.0;
    for (const auto& rec : intervals) sum += rec.count;
    return sum;
}

double ObservationSeries::window_start() const {
    double start = std::numeric_limits<double>::infinity();
    for (const auto& rec : intervals)
        start = std::min(start, rec.center - 0.5 * rec.length);
    return start;
}

double ObservationSeries::window_end() const {
    double end = -std::numeric_limits<double>::infinity();
    for (const auto& rec : intervals)
        end = std::max(end, rec.center + 0.5 * rec.length);
    return end;
}

std::vector<Violation> validate(const ObservationSeries& series) {
    std::vector<Violation> out;
    const auto& recs = series.intervals;

    if (recs.empty()) {
        out.push_back({0, "n >= 1"});
        return out;
    }
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        if (!std::isfinite(r.center) || !std::isfinite(r.length) || !std::isfinite(r.count)) {
            out.push_back({i, "values finite"});
            continue;
        }
        if (!(r.length > 0.0)) out.push_back({i, "length > 0"});
        if (!(r.count >= 0.0)) out.push_back({i, "count >= 0"});
        else if (r.count != std::floor(r.count)) out.push_back({i, "count is an integer"});
    }
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const auto& prev = recs[i - 1];
        const auto& cur = recs[i];
        if (!(cur.center > prev.center)) {
            out.push_back({i, "centers strictly increasing"});
        } else if (cur.center - prev.center <
                   0.5 * (prev.length + cur.length) - kOverlapTolerance) {
            out.push_back({i, "intervals non-overlapping"});
        }
    }
    return out;
}

ObservationSeries recenter(const ObservationSeries& series, double origin) {
    ObservationSeries out = series;
    for (auto& rec : out.intervals) rec.center -= origin;
    return out;
}

double default_origin(const ObservationSeries& series) {
    return 0.5 * (series.window_start() + series.window_end());
}

}  // namespace raretrend
