#include "raretrend/report.hpp"

#include <sstream>

#include "raretrend/version.hpp"

namespace raretrend {

const char* to_string(FitMode mode) {
    return mode == FitMode::ClassicalMle ? "classical_mle" : "bayes_map";
}

const char* to_string(IntervalKind kind) {
    return kind == IntervalKind::Confidence ? "confidence" : "hpd_approx";
}

const char* to_string(TrendDecision decision) {
    switch (decision) {
        case TrendDecision::SignificantDecrease: return "significant_decrease";
        case TrendDecision::SignificantIncrease: return "significant_increase";
        default: return "inconclusive";
    }
}

ordered_json series_summary_json(const ObservationSeries& series) {
    return {{"n", series.size()},
            {"total_count", series.total_count()},
            {"window_start", series.window_start()},
            {"window_end", series.window_end()},
            {"time_unit", series.time_unit}};
}

ordered_json fit_json(const FitResult& fit) {
    return {{"mode", to_string(fit.mode)},
            {"lambda0_hat", fit.lambda0_hat},
            {"beta_hat", fit.beta_hat},
            {"information", fit.information},
            {"sigma", fit.sigma},
            {"time_origin", fit.time_origin}};
}

ordered_json interval_json(const IntervalEstimate& est) {
    return {{"kind", to_string(est.kind)},
            {"lower", est.lower},
            {"upper", est.upper},
            {"alpha", est.alpha},
            {"coverage", est.coverage}};
}

ordered_json verdict_json(const TrendVerdict& verdict) {
    return {{"decision", to_string(verdict.decision)},
            {"u_conf", verdict.u_conf},
            {"o_conf", verdict.o_conf}};
}

ordered_json curve_json(const ObservationSeries& series,
                        const std::vector<CurvePoint>& curve) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        arr.push_back({{"center", curve[i].center},
                       {"observed", series.intervals[i].count},
                       {"expected", curve[i].expected}});
    }
    return arr;
}

ordered_json coverage_json(const SimulationPlan& plan, const CoverageReport& report) {
    ordered_json layout = ordered_json::array();
    for (const auto& cell : plan.layout)
        layout.push_back({{"center", cell.center}, {"length", cell.length}});
    return {{"plan",
             {{"true_lambda0", plan.true_lambda0},
              {"true_beta", plan.true_beta},
              {"layout", layout},
              {"replications", plan.replications},
              {"alpha", plan.alpha},
              {"seed", plan.seed}}},
            {"report",
             {{"replications_run", report.replications_run},
              {"degenerate_count", report.degenerate_count},
              {"empirical_coverage", report.empirical_coverage},
              {"empirical_rejection_rate", report.empirical_rejection_rate},
              {"mean_beta_hat", report.mean_beta_hat},
              {"stddev_beta_hat", report.stddev_beta_hat},
              {"mean_sigma", report.mean_sigma}}}};
}

ordered_json make_report(const std::string& command, const ordered_json& config,
                         const ordered_json& payload) {
    ordered_json doc = {{"tool", "raretrend"}, {"version", kVersion}, {"command", command},
                        {"config", config}};
    for (const auto& [key, value] : payload.items()) doc[key] = value;
    return doc;
}

namespace {

void render_lines(const ordered_json& node, const std::string& prefix,
                  std::ostringstream& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            render_lines(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            render_lines(node[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else {
        out << prefix << " = " << node.dump() << '\n';
    }
}

}  // namespace

std::string render_text(const ordered_json& doc) {
    std::ostringstream out;
    render_lines(doc, "", out);
    return out.str();
}

}  // namespace raretrend
