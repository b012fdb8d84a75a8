// End-to-end checks of the command-line tool: exit codes, report content
// and byte-level determinism, run through the real binary.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(RARETREND_CLI_PATH) + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempFile {
    std::filesystem::path path;
    TempFile(const std::string& name, const std::string& content) {
        path = std::filesystem::temp_directory_path() / name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("fit command reports the two-period fixture") {
    TempFile data("cli_greece.csv", "start,end,count\n2005,2010,2\n2010,2015,1\n");
    const auto run = run_cli("fit " + data.str() + " --alpha 0.05 --out json");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["fit"]["beta_hat"].get<double>() == doctest::Approx(0.1386294).epsilon(1e-6));
    CHECK(doc["fit"]["information"].get<double>() == doctest::Approx(18.75).epsilon(1e-9));
    CHECK(doc["verdict"]["decision"] == "inconclusive");
    CHECK(doc["input"]["n"] == 2);
    CHECK(doc["input"]["total_count"] == 3.0);
}

TEST_CASE("flat data gives a flat fitted curve") {
    TempFile data("cli_flat.csv", "center,length,count\n0.5,1,3\n1.5,1,3\n2.5,1,3\n");
    const auto run = run_cli("fit " + data.str() + " --out json");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["fit"]["beta_hat"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
    for (const auto& point : doc["fitted_curve"])
        CHECK(point["expected"].get<double>() ==
              doctest::Approx(point["observed"].get<double>()).epsilon(1e-9));
}

TEST_CASE("origin zero and midpoint agree on beta and the interval") {
    TempFile data("cli_origin.csv", "start,end,count\n2005,2010,2\n2010,2015,1\n");
    const auto mid = run_cli("fit " + data.str() + " --origin midpoint --out json");
    const auto zero = run_cli("fit " + data.str() + " --origin zero --out json");
    REQUIRE(mid.exit_code == 0);
    REQUIRE(zero.exit_code == 0);
    const auto a = nlohmann::json::parse(mid.output);
    const auto b = nlohmann::json::parse(zero.output);
    CHECK(a["fit"]["beta_hat"] == b["fit"]["beta_hat"]);
    CHECK(a["interval"]["lower"] == b["interval"]["lower"]);
    CHECK(a["interval"]["upper"] == b["interval"]["upper"]);
    CHECK(a["fit"]["lambda0_hat"] != b["fit"]["lambda0_hat"]);
    CHECK(a["fit"]["information"] != b["fit"]["information"]);
}

TEST_CASE("prior file switches the fit to the posterior mode") {
    TempFile data("cli_bayes.csv", "start,end,count\n2005,2010,2\n2010,2015,1\n");
    TempFile prior("cli_prior.csv", "center,a\n2007.5,2\n2012.5,2\n");
    const auto run =
        run_cli("fit " + data.str() + " --prior " + prior.str() + " --out json");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["fit"]["mode"] == "bayes_map");
    CHECK(doc["interval"]["kind"] == "hpd_approx");
    CHECK(doc["fit"]["beta_hat"].get<double>() ==
          doctest::Approx(5.753641e-02).epsilon(1e-6));
}

TEST_CASE("plot emission writes the delimited curve") {
    TempFile data("cli_plot.csv", "start,end,count\n0,5,2\n5,10,1\n");
    const auto plot = std::filesystem::temp_directory_path() / "cli_plot_out.csv";
    const auto run = run_cli("fit " + data.str() + " --plot " + plot.string());
    REQUIRE(run.exit_code == 0);
    std::ifstream in(plot);
    std::string header;
    std::getline(in, header);
    CHECK(header == "center,observed,fitted");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
    std::filesystem::remove(plot);
}

TEST_CASE("exit code 2 on malformed input naming the row") {
    TempFile bad("cli_bad.csv", "start,end,count\n2005,2010,2\n2010,2015,nope\n");
    const auto run = run_cli("fit " + bad.str());
    CHECK(run.exit_code == 2);
    CHECK(run.output.find("row 3") != std::string::npos);

    TempFile commas("cli_commas.csv", "start,end,count\n2005,2010,2\n2010,2015,1,5\n");
    const auto run2 = run_cli("fit " + commas.str());
    CHECK(run2.exit_code == 2);
    CHECK(run2.output.find("decimal commas") != std::string::npos);

    const auto run3 = run_cli("fit /nonexistent/file.csv");
    CHECK(run3.exit_code == 2);
}

TEST_CASE("exit code 3 on degenerate or boundary estimation") {
    TempFile zeros("cli_zeros.csv", "start,end,count\n0,5,0\n5,10,0\n");
    CHECK(run_cli("fit " + zeros.str()).exit_code == 3);

    TempFile edge("cli_edge.csv", "start,end,count\n0,5,4\n5,10,0\n");
    CHECK(run_cli("fit " + edge.str()).exit_code == 3);

    CHECK(run_cli("two-sample --k1 0 --k2 0 --total-time 10").exit_code == 3);
}

TEST_CASE("two-sample command mirrors the first table row") {
    const auto run = run_cli(
        "two-sample --k1 35 --k2 34 --total-time 10 --a1 2 --a2 2 --out json");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["classical"]["fit"]["beta_hat"].get<double>() ==
          doctest::Approx(5.797507e-03).epsilon(1e-6));
    CHECK(doc["bayes"]["fit"]["beta_hat"].get<double>() ==
          doctest::Approx(5.479795e-03).epsilon(1e-6));
    CHECK(doc["classical"]["fit"]["information"].get<double>() ==
          doctest::Approx(431.25).epsilon(1e-9));
    CHECK(doc["bayes"]["fit"]["information"].get<double>() ==
          doctest::Approx(456.25).epsilon(1e-9));
    CHECK(doc["classical"]["cell_means"][0] == 35.0);
    CHECK(doc["bayes"]["cell_means"][1] == 36.0);
}

TEST_CASE("two-sample without a prior reports the classical columns only") {
    const auto run = run_cli("two-sample --k1 2 --k2 1 --total-time 10 --out json");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["classical"]["fit"]["beta_hat"].get<double>() ==
          doctest::Approx(0.1386294).epsilon(1e-6));
    CHECK(!doc.contains("bayes"));
    CHECK(doc["classical"]["verdict"]["decision"] == "inconclusive");
}

TEST_CASE("coverage output is byte-identical across runs") {
    const std::string args =
        "coverage --lambda0 5 --beta 0 --intervals 10 --reps 1500 --seed 42 --out json";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);
    const auto doc = nlohmann::json::parse(first.output);
    CHECK(doc["report"]["replications_run"].get<long long>() == 1500);
    // near-nominal coverage even at this replicate count (3+ binomial SEs)
    const double coverage = doc["report"]["empirical_coverage"].get<double>();
    CHECK(coverage > 0.86);
    CHECK(coverage < 0.94);
}

TEST_CASE("coverage rejects a zero-replication plan") {
    const auto run =
        run_cli("coverage --lambda0 5 --beta 0 --intervals 10 --reps 0 --seed 1");
    CHECK(run.exit_code == 2);
}

TEST_CASE("text output carries the same fields as json") {
    TempFile data("cli_text.csv", "start,end,count\n2005,2010,2\n2010,2015,1\n");
    const auto text = run_cli("fit " + data.str() + " --out text");
    REQUIRE(text.exit_code == 0);
    for (const char* key :
         {"tool = ", "version = ", "fit.beta_hat = ", "fit.lambda0_hat = ",
          "interval.lower = ", "interval.coverage = ", "verdict.decision = ",
          "verdict.u_conf = ", "input.n = ", "fitted_curve[0].expected = ",
          "config.alpha = "})
        CHECK(text.output.find(key) != std::string::npos);
}
