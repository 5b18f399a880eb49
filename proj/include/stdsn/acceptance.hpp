#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace stdsn::acceptance {

enum class Level { Fast, Full };

Level parse_level(const std::string& s);
const char* to_string(Level l);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CriterionReport {
    int id = 0;
    std::string title;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool passed() const;
    std::vector<std::string> failing() const;
};

/// Runs the CLI in-process with the given arguments and returns what it wrote to stdout.
using CliRunner = std::function<std::string(const std::vector<std::string>&)>;

struct Options {
    Level level = Level::Fast;
    CliRunner cli;
};

std::vector<int> criterion_ids();
std::string criterion_title(int id);

CriterionReport run_criterion(int id, const Options& opt);
std::vector<CriterionReport> run_all(const Options& opt, const std::vector<int>& only = {},
                                     std::ostream* progress = nullptr);

/// "[PASS] C<id> <title> (<seconds>s)" followed by one indented line per check.
std::string format_report(const CriterionReport& r);

}  // namespace stdsn::acceptance
