#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "stdsn/errors.hpp"
#include "stdsn/phasespace.hpp"

using namespace stdsn;
using stdsn::cli::run_cli;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    int code = run_cli(args, o, e);
    return {code, o.str(), e.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string header_value(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# " + key + "=", 0) == 0) return line.substr(key.size() + 3);
    return {};
}

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run({"scan", "--quantity", "nonsense"}).code, cli::kUsage);
    EXPECT_EQ(run({"scan", "--range", "1:0:5"}).code, cli::kUsage);
    EXPECT_EQ(run({"scan", "--range", "0:1:1"}).code, cli::kUsage);
    EXPECT_EQ(run({"scan", "--range", "0:1"}).code, cli::kUsage);
    EXPECT_EQ(run({"scan", "--r", "abc"}).code, cli::kUsage);
    EXPECT_EQ(run({"grid", "--n", "1", "--x", "-1:1:3", "--y", "-1:1:3"}).code, cli::kUsage);
    EXPECT_EQ(run({"scan", "--config", "/nonexistent/file"}).code, cli::kUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
}

TEST(Cli, SqueezedVacuumG2IsOne) {
    CliRun r = run({"scan", "--variable", "r", "--range", "0:2:21", "--quantity", "g2_a"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    EXPECT_EQ(rows.size(), 20u);  // r = 0 is the vacuum, reported as a warning
    for (auto& row : rows) EXPECT_NEAR(std::stod(row[1]), 1.0, 1e-9);
    EXPECT_NE(r.out.find("# warning r=0 UndefinedStatistic"), std::string::npos);
}

TEST(Cli, CauchySchwarzVanishesWithoutSqueezing) {
    CliRun r = run({"scan", "--variable", "alpha1", "--range", "0.1:2:12", "--quantity", "cs_v", "--alpha2", "0.7", "--eps",
                 "1", "--phi", "pi"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 12u);
    for (auto& row : rows) EXPECT_NEAR(std::stod(row[1]), 0.0, 1e-10);
}

TEST(Cli, CompoundSqueezingMinimum) {
    CliRun r = run({"scan", "--variable", "nu", "--range", "0:1.5707963267948966:9", "--quantity", "squeeze_F", "--r",
                 "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    auto best = std::min_element(rows.begin(), rows.end(),
                                 [](auto& a, auto& b) { return std::stod(a[1]) < std::stod(b[1]); });
    EXPECT_NEAR(std::stod((*best)[0]), std::numbers::pi / 4, 1e-12);
    EXPECT_NEAR(std::stod((*best)[1]), std::exp(-1.0) - 1, 1e-12);
}

TEST(Cli, JsonSchema) {
    CliRun r = run({"scan", "--variable", "phi", "--range", "0:6.283185307179586:5", "--quantity", "g2_a", "--alpha1",
                 "0.4", "--eps", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_TRUE(j.contains("params"));
    EXPECT_EQ(j["rows"].size() + j["warnings"].size(), 5u);
    for (auto& w : j["warnings"]) EXPECT_EQ(w["error_class"], "UndefinedStatistic");
    EXPECT_EQ(j["params"]["quantity"], "g2_a");
}

TEST(Cli, DegeneratePointsBecomeWarnings) {
    CliRun r = run({"scan", "--variable", "alpha1", "--range", "0:1:3", "--quantity", "mean_photon_a", "--eps", "1",
                 "--phi", "pi", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["warnings"].size(), 1u);
    EXPECT_EQ(j["warnings"][0]["error_class"], "DegenerateState");
    EXPECT_EQ(j["rows"].size(), 2u);
}

TEST(Cli, PurityScanUsesClosedOrNumericForm) {
    CliRun r = run({"scan", "--variable", "r", "--range", "0:1:3", "--quantity", "purity", "--eps", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(std::stod(rows[2][1]), 1 / std::cosh(2.0), 1e-12);
}

TEST(Cli, ConfigFileWithFlagOverride) {
    auto path = std::filesystem::temp_directory_path() / "stdsn_cli_config.txt";
    {
        std::ofstream f(path);
        f << "# test state\nr=0.3\nalpha1=0.5\nalpha2=0.2\neps_mag=1\nphi=pi\n";
    }
    CliRun r = run({"scan", "--config", path.string(), "--alpha2", "0.4", "--variable", "nu", "--range", "0:1:2",
                 "--quantity", "squeeze_S"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(header_value(r.out, "params"),
              "r=0.29999999999999999 alpha1=0.5 alpha2=0.40000000000000002 eps_mag=1 phi=3.1415926535897931 n=0 m=0");
    std::filesystem::remove(path);
}

TEST(Cli, VacuumWignerGrid) {
    CliRun r = run({"grid", "--kind", "W", "--x", "-2:2:5", "--y", "-2:2:5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(header_value(r.out, "max"), "0.63661977236758138 at=0,0");
}

TEST(Cli, NegativeWignerBetweenPeaks) {
    CliRun r = run({"grid", "--kind", "W", "--x", "-4:4:41", "--y", "-3:3:31", "--alpha1", "2", "--alpha2", "0.9", "--eps",
                 "1", "--phi", "0", "--m", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string minline = header_value(r.out, "min");
    double vmin = std::stod(minline);
    EXPECT_LT(vmin, 0.0);
    auto at = minline.substr(minline.find("at=") + 3);
    double x = std::stod(at), y = std::stod(at.substr(at.find(',') + 1));
    EXPECT_LT(std::abs(x), 1.0);
    EXPECT_LT(std::abs(y), 1.5);
}

TEST(Cli, SqueezedOddQIsNonnegativeWithPeaksOnTheYAxis) {
    CliRun r = run({"grid", "--kind", "Q", "--x", "-4:4:41", "--y", "-4:4:41", "--r", "1.8", "--alpha1", "2", "--alpha2",
                 "0.9", "--eps", "1", "--phi", "pi", "--m", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_GE(std::stod(header_value(r.out, "min")), -1e-12);
    std::string at = header_value(r.out, "max").substr(header_value(r.out, "max").find("at=") + 3);
    double x = std::stod(at.substr(0, at.find(','))), y = std::stod(at.substr(at.find(',') + 1));
    EXPECT_EQ(x, 0.0);
    EXPECT_GT(std::abs(y), 1.5);
    StateParams p = parse_record("r=1.8 alpha1=2 alpha2=0.9 eps_mag=1 phi=pi m=1");
    EXPECT_NEAR(qfunc_closed(p, {0.0, y}), qfunc_closed(p, {0.0, -y}), 1e-14);
    EXPECT_GT(qfunc_closed(p, {0.0, y}), qfunc_closed(p, {0.0, 0.0}));
}

TEST(Cli, PhotonNumberDistribution) {
    CliRun r = run({"pnd", "--r", "0.3", "--alpha1", "1", "--alpha2", "0.5", "--eps", "1", "--mode", "a"});
    ASSERT_EQ(r.code, 0) << r.err;
    double total = 0;
    for (auto& row : csv_rows(r.out)) total += std::stod(row[1]);
    EXPECT_NEAR(total, 1.0, 1e-10);
    CliRun small = run({"pnd", "--r", "1", "--alpha1", "2", "--cutoff", "4"});
    ASSERT_EQ(small.code, 0);
    EXPECT_NE(small.out.find("# warning InsufficientCutoff"), std::string::npos);
    CliRun seeded = run({"pnd", "--alpha1", "0.5", "--n", "1", "--format", "json"});
    ASSERT_EQ(seeded.code, 0) << seeded.err;
    EXPECT_EQ(nlohmann::json::parse(seeded.out)["params"]["source"], "oracle");
}

TEST(Cli, GenerateVacuumAndDegenerate) {
    CliRun vac = run({"generate"});
    ASSERT_EQ(vac.code, 0) << vac.err;
    std::string f = vac.out.substr(vac.out.find("fidelity=") + 9);
    EXPECT_NEAR(std::stod(f), 1.0, 1e-12);
    CliRun target = run({"generate", "--r", "0.4", "--alpha1", "1", "--alpha2", "0.5", "--eps", "1", "--format", "json"});
    ASSERT_EQ(target.code, 0) << target.err;
    EXPECT_GE(nlohmann::json::parse(target.out)["rows"][0]["fidelity"].get<double>(), 0.999);
    CliRun odd = run({"generate", "--eps", "1", "--phi", "pi"});
    EXPECT_EQ(odd.code, cli::kDegenerate);
    EXPECT_NE(odd.err.find("DegenerateState"), std::string::npos);
}

TEST(Cli, StateDump) {
    CliRun r = run({"state-dump", "--n", "1", "--cutoff-a", "4", "--cutoff-b", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "# params=r=0 alpha1=0 alpha2=0 eps_mag=0 phi=0 n=1 m=0\n# space=4x4\n1,0,1,0\n");
}

TEST(Cli, OutputFileAndDeterminism) {
    auto path = std::filesystem::temp_directory_path() / "stdsn_cli_scan.json";
    std::vector<std::string> args = {"scan", "--variable", "r", "--range", "0:1.5:16", "--quantity", "cs_v",
                                     "--alpha1", "0.5", "--alpha2", "0.2", "--eps", "1", "--phi", "pi",
                                     "--format", "json", "--output", path.string()};
    ASSERT_EQ(run(args).code, 0);
    std::ifstream f1(path);
    std::string a((std::istreambuf_iterator<char>(f1)), {});
    ASSERT_EQ(run(args).code, 0);
    std::ifstream f2(path);
    std::string b((std::istreambuf_iterator<char>(f2)), {});
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b);
    std::filesystem::remove(path);
}

TEST(ScanSpec, Validation) {
    cli::ScanSpec s;
    s.count = 1;
    EXPECT_THROW(s.validate(), DomainError);
    s.count = 3;
    s.variable = "x";
    EXPECT_THROW(s.validate(), DomainError);
    s.variable = "r";
    EXPECT_NO_THROW(s.validate());
    EXPECT_DOUBLE_EQ(s.at(2), 1.0);
}

TEST(Cli, ValidateReportsTheUnattainableSignCheck) {
    CliRun r = run({"validate", "--only", "3"});
    EXPECT_EQ(r.code, cli::kInternal);
    EXPECT_NE(r.out.find("[FAIL] C3"), std::string::npos);
    std::istringstream in(r.out);
    std::string line;
    std::vector<std::string> failing;
    while (std::getline(in, line))
        if (line.rfind("failing: ", 0) == 0) failing.push_back(line);
    ASSERT_EQ(failing.size(), 1u) << r.out;
    EXPECT_EQ(failing[0].rfind("failing: C3 V < 0 at", 0), 0u);
}
