// raretrend: trend analysis for rare-event count series.
//
// Subcommands:
//   fit         fit the exponential-trend model to a series file
//   two-sample  closed-form before/after comparison
//   coverage    Monte Carlo check of confidence-interval coverage
//
// Exit codes: 0 success (including an inconclusive verdict), 2 input or
// validation error, 3 degenerate or boundary estimation.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "raretrend/bayes.hpp"
#include "raretrend/estimate.hpp"
#include "raretrend/io.hpp"
#include "raretrend/model.hpp"
#include "raretrend/report.hpp"
#include "raretrend/simcheck.hpp"
#include "raretrend/twosample.hpp"

namespace {

using raretrend::ordered_json;

struct FitOptions {
    std::string data_file;
    double alpha = 0.05;
    std::string origin = "midpoint";
    std::string prior_file;
    std::string prior_mode = "augment";
    std::string out = "text";
    std::string plot_file;
};

struct TwoSampleOptions {
    double k1 = 0.0;
    double k2 = 0.0;
    double total_time = 0.0;
    double split = 0.5;
    std::optional<double> a1;
    std::optional<double> a2;
    double alpha = 0.05;
    std::string out = "text";
};

struct CoverageOptions {
    double lambda0 = 1.0;
    double beta = 0.0;
    int intervals = 0;
    double interval_length = 1.0;
    double alpha = 0.05;
    long long reps = 0;
    std::uint64_t seed = 0;
    std::string out = "text";
};

double parse_origin(const std::string& spec, const raretrend::ObservationSeries& series) {
    if (spec == "midpoint") return raretrend::default_origin(series);
    if (spec == "zero") return 0.0;
    double value = 0.0;
    const auto res = std::from_chars(spec.data(), spec.data() + spec.size(), value);
    if (res.ec != std::errc() || res.ptr != spec.data() + spec.size())
        throw std::invalid_argument("--origin must be 'midpoint', 'zero' or a number");
    return value;
}

void emit(const ordered_json& doc, const std::string& out) {
    if (out == "json")
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << raretrend::render_text(doc);
}

int run_fit(const FitOptions& opt) {
    const auto series = raretrend::read_series_file(opt.data_file);
    const double origin = parse_origin(opt.origin, series);

    raretrend::FitResult fit;
    raretrend::IntervalEstimate interval;
    if (opt.prior_file.empty()) {
        fit = raretrend::fit_mle_at(series, origin);
        interval = raretrend::confidence_interval(fit, opt.alpha);
    } else {
        const auto mode = opt.prior_mode == "blend" ? raretrend::WeightMode::Blend
                                                    : raretrend::WeightMode::Augment;
        const auto prior = raretrend::read_prior_file(opt.prior_file, series, mode);
        fit = raretrend::fit_map_at(series, prior, origin);
        interval = raretrend::hpd_interval(fit, opt.alpha);
    }
    const auto verdict = raretrend::trend_test(fit, opt.alpha);
    const auto curve = raretrend::fitted_curve(fit, series);

    if (!opt.plot_file.empty()) {
        std::vector<double> fitted;
        for (const auto& point : curve) fitted.push_back(point.expected);
        raretrend::write_plot_file(opt.plot_file, series, fitted);
    }

    const ordered_json config = {{"data_file", opt.data_file},
                                 {"alpha", opt.alpha},
                                 {"origin", opt.origin},
                                 {"prior_file", opt.prior_file},
                                 {"prior_mode", opt.prior_mode},
                                 {"out", opt.out},
                                 {"plot_file", opt.plot_file}};
    const ordered_json payload = {{"input", raretrend::series_summary_json(series)},
                                  {"fit", raretrend::fit_json(fit)},
                                  {"interval", raretrend::interval_json(interval)},
                                  {"verdict", raretrend::verdict_json(verdict)},
                                  {"fitted_curve", raretrend::curve_json(series, curve)}};
    emit(raretrend::make_report("fit", config, payload), opt.out);
    return 0;
}

int run_two_sample(const TwoSampleOptions& opt) {
    const raretrend::TwoSampleInput input{opt.k1, opt.k2, opt.total_time, opt.split};
    const auto classical = raretrend::two_sample_fit(input);
    const auto classical_ci = raretrend::confidence_interval(classical, opt.alpha);
    const auto classical_verdict = raretrend::trend_test(classical, opt.alpha);
    const auto means = raretrend::cell_means(input);

    ordered_json payload = {
        {"input",
         {{"k1", opt.k1}, {"k2", opt.k2}, {"total_time", opt.total_time}, {"split", opt.split}}},
        {"classical",
         {{"fit", raretrend::fit_json(classical)},
          {"interval", raretrend::interval_json(classical_ci)},
          {"verdict", raretrend::verdict_json(classical_verdict)},
          {"cell_means", {means.first, means.second}}}}};

    if (opt.a1 || opt.a2) {
        const double a1 = opt.a1.value_or(0.0);
        const double a2 = opt.a2.value_or(0.0);
        const auto bayes = raretrend::two_sample_bayes(input, a1, a2);
        const auto hpd = raretrend::hpd_interval(bayes, opt.alpha);
        const auto bayes_verdict = raretrend::trend_test(bayes, opt.alpha);
        const raretrend::TwoSampleInput augmented{opt.k1 + a1, opt.k2 + a2,
                                                  opt.total_time, opt.split};
        const auto bayes_means = raretrend::cell_means(augmented);
        payload["bayes"] = {{"prior", {{"a1", a1}, {"a2", a2}}},
                            {"fit", raretrend::fit_json(bayes)},
                            {"interval", raretrend::interval_json(hpd)},
                            {"verdict", raretrend::verdict_json(bayes_verdict)},
                            {"cell_means", {bayes_means.first, bayes_means.second}}};
    }

    const ordered_json config = {{"k1", opt.k1},
                                 {"k2", opt.k2},
                                 {"total_time", opt.total_time},
                                 {"split", opt.split},
                                 {"a1", opt.a1 ? ordered_json(*opt.a1) : ordered_json()},
                                 {"a2", opt.a2 ? ordered_json(*opt.a2) : ordered_json()},
                                 {"alpha", opt.alpha},
                                 {"out", opt.out}};
    emit(raretrend::make_report("two-sample", config, payload), opt.out);
    return 0;
}

int run_coverage(const CoverageOptions& opt) {
    raretrend::SimulationPlan plan;
    plan.true_lambda0 = opt.lambda0;
    plan.true_beta = opt.beta;
    plan.layout = raretrend::uniform_layout(opt.intervals, opt.interval_length);
    plan.replications = opt.reps;
    plan.alpha = opt.alpha;
    plan.seed = opt.seed;
    raretrend::validate_plan(plan);

    const auto report = raretrend::coverage_experiment(plan);

    const ordered_json config = {{"lambda0", opt.lambda0},
                                 {"beta", opt.beta},
                                 {"intervals", opt.intervals},
                                 {"interval_length", opt.interval_length},
                                 {"alpha", opt.alpha},
                                 {"reps", opt.reps},
                                 {"seed", opt.seed},
                                 {"out", opt.out}};
    emit(raretrend::make_report("coverage", config, raretrend::coverage_json(plan, report)),
         opt.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trend analysis for rare-event count series"};
    app.require_subcommand(1);

    FitOptions fit_opt;
    auto* fit_cmd = app.add_subcommand("fit", "fit the trend model to a series file");
    fit_cmd->add_option("data-file", fit_opt.data_file, "delimited series file")->required();
    fit_cmd->add_option("--alpha", fit_opt.alpha, "tail probability per side");
    fit_cmd->add_option("--origin", fit_opt.origin, "midpoint|zero|<number>");
    auto* prior_opt = fit_cmd->add_option("--prior", fit_opt.prior_file, "prior file");
    fit_cmd->add_option("--prior-mode", fit_opt.prior_mode, "augment|blend")
        ->check(CLI::IsMember({"augment", "blend"}))
        ->needs(prior_opt);
    fit_cmd->add_option("--out", fit_opt.out, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    fit_cmd->add_option("--plot", fit_opt.plot_file, "write (center,observed,fitted) rows");

    TwoSampleOptions ts_opt;
    auto* ts_cmd = app.add_subcommand("two-sample", "before/after comparison of two periods");
    ts_cmd->add_option("--k1", ts_opt.k1, "events in the first period")->required();
    ts_cmd->add_option("--k2", ts_opt.k2, "events in the second period")->required();
    ts_cmd->add_option("--total-time", ts_opt.total_time, "total window length")->required();
    ts_cmd->add_option("--split", ts_opt.split, "first-period share of the window");
    auto* a1_opt = ts_cmd->add_option("--a1", ts_opt.a1, "prior pseudo-count, first period");
    auto* a2_opt = ts_cmd->add_option("--a2", ts_opt.a2, "prior pseudo-count, second period");
    a1_opt->needs(a2_opt);
    a2_opt->needs(a1_opt);
    ts_cmd->add_option("--alpha", ts_opt.alpha, "tail probability per side");
    ts_cmd->add_option("--out", ts_opt.out, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    CoverageOptions cov_opt;
    auto* cov_cmd = app.add_subcommand("coverage", "Monte Carlo coverage experiment");
    cov_cmd->add_option("--lambda0", cov_opt.lambda0, "true intensity per time unit")->required();
    cov_cmd->add_option("--beta", cov_opt.beta, "true trend rate");
    cov_cmd->add_option("--intervals", cov_opt.intervals, "number of intervals")->required();
    cov_cmd->add_option("--interval-length", cov_opt.interval_length, "length per interval");
    cov_cmd->add_option("--alpha", cov_opt.alpha, "tail probability per side");
    cov_cmd->add_option("--reps", cov_opt.reps, "replications")->required();
    cov_cmd->add_option("--seed", cov_opt.seed, "RNG seed");
    cov_cmd->add_option("--out", cov_opt.out, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (fit_cmd->parsed()) return run_fit(fit_opt);
        if (ts_cmd->parsed()) return run_two_sample(ts_opt);
        return run_coverage(cov_opt);
    } catch (const raretrend::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const raretrend::DegenerateDataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const raretrend::BoundaryMleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
