#pragma once

// Machine-readable analysis reports. Documents are nlohmann ordered_json so
// key order is the insertion order fixed here -- identical runs serialize to
// identical bytes, and numbers round-trip losslessly.

#include <string>
#include <vector>

#include <json.hpp>

#include "raretrend/estimate.hpp"
#include "raretrend/model.hpp"
#include "raretrend/simcheck.hpp"

namespace raretrend {

using ordered_json = nlohmann::ordered_json;

const char* to_string(FitMode mode);
const char* to_string(IntervalKind kind);
const char* to_string(TrendDecision decision);

ordered_json series_summary_json(const ObservationSeries& series);
ordered_json fit_json(const FitResult& fit);
ordered_json interval_json(const IntervalEstimate& est);
ordered_json verdict_json(const TrendVerdict& verdict);
ordered_json curve_json(const ObservationSeries& series,
                        const std::vector<CurvePoint>& curve);
ordered_json coverage_json(const SimulationPlan& plan, const CoverageReport& report);

// Wraps a payload with the tool/version banner and the configuration echo.
ordered_json make_report(const std::string& command, const ordered_json& config,
                         const ordered_json& payload);

// Flat "path = value" rendering; carries every field of the document.
std::string render_text(const ordered_json& doc);

}  // namespace raretrend
