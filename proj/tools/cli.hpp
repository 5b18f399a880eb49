#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "stdsn/state.hpp"

namespace stdsn::cli {

enum ExitCode { kSuccess = 0, kInternal = 1, kUsage = 2, kDegenerate = 3 };

constexpr int kSchemaVersion = 1;

struct ScanSpec {
    std::string variable = "r";  // r, alpha1, alpha2, nu, phi
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    StateParams fixed;
    std::string quantity = "g2_a";  // g2_a, g2_b, cs_v, squeeze_F, squeeze_S, purity, mean_photon_a
    double nu = 0.0;                // quadrature angle when the variable is not nu

    /// Throws DomainError on an unknown variable or quantity, count < 2 or min >= max.
    void validate() const;
    double at(int i) const { return min + (max - min) * i / (count - 1); }
};

struct ScanWarning {
    double x = 0.0;
    std::string error_class;
    std::string message;
};

struct OutputRecord {
    int schema_version = kSchemaVersion;
    ScanSpec spec;
    std::vector<std::pair<double, double>> rows;
    std::vector<ScanWarning> warnings;
};

/// Evaluates the quantity at every point (in parallel). Points raising DegenerateState,
/// UndefinedStatistic or ConvergenceFailure become warnings; other errors propagate.
OutputRecord run_scan(const ScanSpec& spec);

std::string scan_to_csv(const OutputRecord& rec);
std::string scan_to_json(const OutputRecord& rec);

/// Parses "min:max:count".
void parse_range(const std::string& text, double& min, double& max, int& count);

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stdsn::cli
