#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"
#include "stdsn/acceptance.hpp"

namespace acc = stdsn::acceptance;

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::string level = "fast";
    std::vector<int> only;
    std::vector<std::string> known_red;
    app.add_option("--level", level)->check(CLI::IsMember({"fast", "full"}));
    app.add_option("--only", only, "Criterion ids");
    app.add_option("--known-red", known_red,
                   "Check names (as printed, prefixed with C<id>) whose failure is documented; "
                   "they are still reported as FAIL but do not change the exit code");
    CLI11_PARSE(app, argc, argv);

    acc::Options opt;
    opt.level = acc::parse_level(level);
    opt.cli = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = stdsn::cli::run_cli(args, out, err);
        if (code != 0) throw std::runtime_error("exit code " + std::to_string(code) + ": " + err.str());
        return out.str();
    };

    auto reports = acc::run_all(opt, only, &std::cout);
    int unexpected = 0, documented = 0;
    for (const auto& r : reports)
        for (const auto& name : r.failing()) {
            bool listed = false;
            for (const auto& k : known_red) listed = listed || name.rfind(k, 0) == 0;
            if (listed) {
                ++documented;
                std::cout << "known red: " << name << "\n";
            } else {
                ++unexpected;
                std::cout << "failing: " << name << "\n";
            }
        }
    std::cout << "summary: " << reports.size() << " criteria, " << unexpected << " unexpected failures, " << documented
              << " documented failures\n";
    return unexpected == 0 ? 0 : 1;
}
