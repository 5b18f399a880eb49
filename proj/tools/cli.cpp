#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stdsn/acceptance.hpp"
#include "stdsn/errors.hpp"
#include "stdsn/iongen.hpp"
#include "stdsn/oracle.hpp"
#include "stdsn/phasespace.hpp"
#include "stdsn/squeezing.hpp"
#include "stdsn/stats.hpp"

namespace stdsn::cli {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kVariables = {"r", "alpha1", "alpha2", "nu", "phi"};
const std::vector<std::string> kQuantities = {"g2_a",      "g2_b",   "cs_v",         "squeeze_F",
                                              "squeeze_S", "purity", "mean_photon_a"};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct StateFlags {
    std::optional<std::string> config, r, alpha1, alpha2, eps, phi, n, m;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "File holding a flat key=value state record");
        app->add_option("--r", r, "Squeeze parameter");
        app->add_option("--alpha1", alpha1, "Displacement of mode a");
        app->add_option("--alpha2", alpha2, "Displacement of mode b");
        app->add_option("--eps", eps, "Superposition weight |eps|");
        app->add_option("--phi", phi, "Superposition phase (accepts pi, pi/2, ...)");
        app->add_option("--n", n, "Seed occupation of mode a");
        app->add_option("--m", m, "Seed occupation of mode b");
    }

    StateParams resolve() const {
        StateParams base;
        if (config) base = parse_record(read_file(*config));
        std::string rec;
        auto put = [&](const char* key, const std::optional<std::string>& v) {
            if (v) rec += std::string(key) + "=" + *v + " ";
        };
        put("r", r);
        put("alpha1", alpha1);
        put("alpha2", alpha2);
        put("eps_mag", eps);
        put("phi", phi);
        put("n", n);
        put("m", m);
        StateParams p = parse_record(rec, base);
        p.validate();
        return p;
    }
};

class Output {
public:
    explicit Output(std::ostream& fallback) : fallback_(fallback) {}
    void set_path(const std::optional<std::string>& p) { path_ = p; }
    void write(const std::string& text) {
        if (!path_) {
            fallback_ << text;
            return;
        }
        std::ofstream f(*path_, std::ios::binary);
        if (!f) throw UsageError("cannot write " + *path_);
        f << text;
    }

private:
    std::ostream& fallback_;
    std::optional<std::string> path_;
};

double evaluate(const ScanSpec& s, double x) {
    StateParams p = s.fixed;
    double nu = s.nu;
    if (s.variable == "r")
        p.r = x;
    else if (s.variable == "alpha1")
        p.alpha1 = x;
    else if (s.variable == "alpha2")
        p.alpha2 = x;
    else if (s.variable == "phi")
        p.phi = x;
    else
        nu = x;

    const std::string& q = s.quantity;
    if (q == "g2_a") return g2(p, Mode::A);
    if (q == "g2_b") return g2(p, Mode::B);
    if (q == "cs_v") return cs_factor(p);
    if (q == "squeeze_F") return squeeze_factors(p, {nu}).F;
    if (q == "squeeze_S") return squeeze_factors(p, {nu}).S;
    if (q == "mean_photon_a") return mean_photon(p, Mode::A);
    if (p.eps_mag == 1.0 && p.n == 0 && p.m == 0) return purity_closed(p);
    return purity_numeric(p);
}

std::string params_line(const StateParams& p) { return "# params=" + to_record(p) + "\n"; }

json state_json(const StateParams& p) {
    return json{{"r", p.r},     {"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"eps_mag", p.eps_mag},
                {"phi", p.phi}, {"n", p.n},           {"m", p.m}};
}

int cmd_validate(const std::string& level, const std::vector<int>& only, std::ostream& out) {
    acceptance::Options opt;
    opt.level = acceptance::parse_level(level);
    opt.cli = [](const std::vector<std::string>& args) {
        std::ostringstream o, e;
        int code = run_cli(args, o, e);
        if (code != kSuccess) throw std::runtime_error("exit code " + std::to_string(code) + ": " + e.str());
        return o.str();
    };
    auto reports = acceptance::run_all(opt, only, &out);
    int passed = 0;
    std::vector<std::string> failing;
    for (const auto& r : reports) {
        if (r.passed()) ++passed;
        for (auto& f : r.failing()) failing.push_back(f);
    }
    out << "validate " << acceptance::to_string(opt.level) << ": " << passed << "/" << reports.size()
        << " criteria passed\n";
    for (const auto& f : failing) out << "failing: " << f << "\n";
    return failing.empty() ? kSuccess : kInternal;
}

}  // namespace

void ScanSpec::validate() const {
    if (!contains(kVariables, variable)) throw DomainError("unknown scan variable '" + variable + "'");
    if (!contains(kQuantities, quantity)) throw DomainError("unknown scan quantity '" + quantity + "'");
    if (count < 2) throw DomainError("scan count must be at least 2");
    if (!(min < max)) throw DomainError("scan range needs min < max");
    fixed.validate();
}

OutputRecord run_scan(const ScanSpec& spec) {
    spec.validate();
    OutputRecord rec;
    rec.spec = spec;
    std::vector<double> values(spec.count, 0.0);
    std::vector<std::exception_ptr> errors(spec.count);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < spec.count; ++i) {
        try {
            values[i] = evaluate(spec, spec.at(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (int i = 0; i < spec.count; ++i) {
        double x = spec.at(i);
        if (!errors[i]) {
            rec.rows.emplace_back(x, values[i]);
            continue;
        }
        try {
            std::rethrow_exception(errors[i]);
        } catch (const DegenerateState& e) {
            rec.warnings.push_back({x, e.error_class(), e.what()});
        } catch (const UndefinedStatistic& e) {
            rec.warnings.push_back({x, e.error_class(), e.what()});
        } catch (const ConvergenceFailure& e) {
            rec.warnings.push_back({x, e.error_class(), e.what()});
        }
    }
    return rec;
}

std::string scan_to_csv(const OutputRecord& rec) {
    const ScanSpec& s = rec.spec;
    std::ostringstream os;
    os << "# schema_version=" << rec.schema_version << "\n";
    os << params_line(s.fixed);
    os << "# scan variable=" << s.variable << " min=" << format_double(s.min) << " max=" << format_double(s.max)
       << " count=" << s.count << " quantity=" << s.quantity << " nu=" << format_double(s.nu) << "\n";
    for (const auto& w : rec.warnings)
        os << "# warning " << s.variable << "=" << format_double(w.x) << " " << w.error_class << ": " << w.message
           << "\n";
    os << s.variable << "," << s.quantity << "\n";
    for (auto [x, v] : rec.rows) os << format_double(x) << "," << format_double(v) << "\n";
    return os.str();
}

std::string scan_to_json(const OutputRecord& rec) {
    const ScanSpec& s = rec.spec;
    json j;
    j["schema_version"] = rec.schema_version;
    j["params"] = {{"state", state_json(s.fixed)},
                   {"record", to_record(s.fixed)},
                   {"variable", s.variable},
                   {"range", {{"min", s.min}, {"max", s.max}, {"count", s.count}}},
                   {"quantity", s.quantity},
                   {"nu", s.nu}};
    json rows = json::array();
    for (auto [x, v] : rec.rows) rows.push_back({{s.variable, x}, {s.quantity, v}});
    j["rows"] = rows;
    json warnings = json::array();
    for (const auto& w : rec.warnings)
        warnings.push_back({{s.variable, w.x}, {"error_class", w.error_class}, {"message", w.message}});
    j["warnings"] = warnings;
    return j.dump(2) + "\n";
}

void parse_range(const std::string& text, double& min, double& max, int& count) {
    auto a = text.find(':');
    auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw UsageError("range must look like min:max:count, got '" + text + "'");
    try {
        std::size_t used = 0;
        std::string s0 = text.substr(0, a), s1 = text.substr(a + 1, b - a - 1), s2 = text.substr(b + 1);
        min = std::stod(s0, &used);
        if (used != s0.size()) throw std::invalid_argument(s0);
        max = std::stod(s1, &used);
        if (used != s1.size()) throw std::invalid_argument(s1);
        count = std::stoi(s2, &used);
        if (used != s2.size()) throw std::invalid_argument(s2);
    } catch (const std::logic_error&) {
        throw UsageError("range must look like min:max:count, got '" + text + "'");
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Squeezed displaced two-mode number state superpositions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "stdsn 0.1.0");

    std::optional<std::string> output_path;

    auto* scan = app.add_subcommand("scan", "Evaluate one quantity along a parameter range");
    StateFlags scan_state;
    scan_state.attach(scan);
    std::string variable = "r", range = "0:1:11", quantity = "g2_a", format = "csv";
    double nu = 0.0;
    scan->add_option("--variable", variable, "r, alpha1, alpha2, nu or phi")->check(CLI::IsMember(kVariables));
    scan->add_option("--range", range, "min:max:count");
    scan->add_option("--quantity", quantity)->check(CLI::IsMember(kQuantities));
    scan->add_option("--nu", nu, "Quadrature angle for squeeze_F/S when nu is not scanned");
    scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--output", output_path);

    auto* grid = app.add_subcommand("grid", "W or Q function on a rectangular grid");
    StateFlags grid_state;
    grid_state.attach(grid);
    std::string kind = "W", xr = "-4:4:81", yr = "-4:4:81", method = "closed";
    double tol = 1e-9;
    grid->add_option("--kind", kind)->check(CLI::IsMember({"W", "Q"}));
    grid->add_option("--x", xr, "min:max:count");
    grid->add_option("--y", yr, "min:max:count");
    grid->add_option("--method", method)->check(CLI::IsMember({"closed", "numeric"}));
    grid->add_option("--tol", tol, "Quadrature tolerance for the numeric method");
    grid->add_option("--output", output_path);

    auto* pnd = app.add_subcommand("pnd", "Photon-number distribution");
    StateFlags pnd_state;
    pnd_state.attach(pnd);
    std::optional<int> cutoff;
    std::string pnd_mode = "joint";
    pnd->add_option("--cutoff", cutoff, "Per-mode cutoff (default: certified)");
    pnd->add_option("--mode", pnd_mode)->check(CLI::IsMember({"joint", "a", "b"}));
    pnd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    pnd->add_option("--output", output_path);

    auto* gen = app.add_subcommand("generate", "Simulate the trapped-ion preparation of a target state");
    StateFlags gen_state;
    gen_state.attach(gen);
    double coupling_scale = 1.0;
    gen->add_option("--coupling-scale", coupling_scale, "Magnitude of the synthesized couplings");
    gen->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    gen->add_option("--output", output_path);

    auto* val = app.add_subcommand("validate", "Run the acceptance checks");
    std::string level = "fast";
    std::vector<int> only;
    val->add_option("--level", level)->check(CLI::IsMember({"fast", "full"}));
    val->add_option("--only", only, "Criterion ids to run");

    auto* sd = app.add_subcommand("state-dump", "Oracle amplitudes of the state");
    StateFlags sd_state;
    sd_state.attach(sd);
    std::optional<int> cutoff_a, cutoff_b;
    sd->add_option("--cutoff-a", cutoff_a);
    sd->add_option("--cutoff-b", cutoff_b);
    sd->add_option("--output", output_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    Output sink(out);
    sink.set_path(output_path);
    try {
        if (*scan) {
            ScanSpec spec;
            spec.variable = variable;
            spec.quantity = quantity;
            spec.nu = nu;
            parse_range(range, spec.min, spec.max, spec.count);
            spec.fixed = scan_state.resolve();
            spec.validate();
            OutputRecord rec = run_scan(spec);
            sink.write(format == "json" ? scan_to_json(rec) : scan_to_csv(rec));
        } else if (*grid) {
            StateParams p = grid_state.resolve();
            GridMethod gm = method == "closed" ? GridMethod::Closed : GridMethod::Numeric;
            if (gm == GridMethod::Closed && p.n != 0) throw UsageError("the closed method requires n = 0");
            GridAxis gx, gy;
            parse_range(xr, gx.min, gx.max, gx.count);
            parse_range(yr, gy.min, gy.max, gy.count);
            if (gx.count < 2 || gy.count < 2 || !(gx.min < gx.max) || !(gy.min < gy.max))
                throw UsageError("grid axes need min < max and count >= 2");
            derive(p);
            PhaseSpaceGrid g = fill_grid(p, kind == "W" ? QuasiKind::W : QuasiKind::Q, gx, gy, gm, tol);
            sink.write(grid_to_csv(g));
        } else if (*pnd) {
            StateParams p = pnd_state.resolve();
            derive(p);
            int N = 0;
            std::vector<double> prob;
            std::string source = "closed";
            if (p.n == 0 && p.m == 0) {
                FockTable t = cutoff ? FockTable(p, *cutoff) : certified_fock_table(p);
                N = t.cutoff();
                prob.resize(std::size_t(N) * N);
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) prob[std::size_t(i) * N + j] = t.probability(i, j);
            } else {
                source = "oracle";
                StateVector sv = cutoff ? build_state(p, {*cutoff, *cutoff}) : build_certified(p);
                N = std::min(sv.space.cutoff_a, sv.space.cutoff_b);
                prob.resize(std::size_t(N) * N);
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) prob[std::size_t(i) * N + j] = std::norm(sv.amplitude(i, j));
            }
            double total = 0.0;
            for (double v : prob) total += v;
            double tail = std::max(0.0, 1.0 - total);

            std::vector<std::vector<double>> rows;
            if (pnd_mode == "joint") {
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) rows.push_back({double(i), double(j), prob[std::size_t(i) * N + j]});
            } else {
                for (int k = 0; k < N; ++k) {
                    double s = 0.0;
                    for (int l = 0; l < N; ++l)
                        s += pnd_mode == "a" ? prob[std::size_t(k) * N + l] : prob[std::size_t(l) * N + k];
                    rows.push_back({double(k), s});
                }
            }
            std::vector<std::string> header =
                pnd_mode == "joint" ? std::vector<std::string>{"n1", "n2", "probability"}
                                    : std::vector<std::string>{pnd_mode == "a" ? "n1" : "n2", "probability"};
            if (format == "json") {
                json j;
                j["schema_version"] = kSchemaVersion;
                j["params"] = {{"state", state_json(p)}, {"record", to_record(p)}, {"mode", pnd_mode},
                               {"cutoff", N},           {"source", source}};
                json jr = json::array();
                for (const auto& r : rows) {
                    json o;
                    for (std::size_t c = 0; c < header.size(); ++c) {
                        if (c + 1 < header.size())
                            o[header[c]] = int(r[c]);
                        else
                            o[header[c]] = r[c];
                    }
                    jr.push_back(o);
                }
                j["rows"] = jr;
                json warnings = json::array();
                if (tail >= 1e-10)
                    warnings.push_back({{"error_class", "InsufficientCutoff"}, {"tail", tail}});
                j["warnings"] = warnings;
                sink.write(j.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "# schema_version=" << kSchemaVersion << "\n" << params_line(p);
                os << "# mode=" << pnd_mode << " cutoff=" << N << " source=" << source
                   << " tail=" << format_double(tail) << "\n";
                if (tail >= 1e-10) os << "# warning InsufficientCutoff: omitted mass " << format_double(tail) << "\n";
                for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
                os << "\n";
                for (const auto& r : rows) {
                    for (std::size_t c = 0; c + 1 < r.size(); ++c) os << int(r[c]) << ",";
                    os << format_double(r.back()) << "\n";
                }
                sink.write(os.str());
            }
        } else if (*gen) {
            StateParams p = gen_state.resolve();
            ProtocolOptions po;
            po.coupling_scale = coupling_scale;
            ProtocolResult res = run_protocol(p, po);
            if (format == "json") {
                json j;
                j["schema_version"] = kSchemaVersion;
                j["params"] = {{"state", state_json(p)},
                               {"record", to_record(p)},
                               {"cutoff_a", res.state.space.cutoff_a},
                               {"cutoff_b", res.state.space.cutoff_b}};
                j["rows"] = json::array({{{"schedule", res.schedule.serialize()},
                                          {"fidelity", res.fidelity},
                                          {"probability_ground", res.probability_ground},
                                          {"probability_excited", res.probability_excited}}});
                j["warnings"] = json::array();
                sink.write(j.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "# schema_version=" << kSchemaVersion << "\n" << params_line(p);
                os << "# space=" << res.state.space.cutoff_a << "x" << res.state.space.cutoff_b << "\n";
                os << res.schedule.serialize();
                os << "fidelity=" << format_double(res.fidelity) << "\n";
                os << "probability_ground=" << format_double(res.probability_ground) << "\n";
                os << "probability_excited=" << format_double(res.probability_excited) << "\n";
                sink.write(os.str());
            }
        } else if (*val) {
            return cmd_validate(level, only, out);
        } else if (*sd) {
            StateParams p = sd_state.resolve();
            StateVector sv;
            if (cutoff_a || cutoff_b) {
                TruncatedSpace space{cutoff_a.value_or(initial_cutoff(p)), cutoff_b.value_or(initial_cutoff(p))};
                sv = build_state(p, space);
            } else {
                sv = build_certified(p);
            }
            sink.write(params_line(p) + dump(sv));
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DegenerateState& e) {
        err << "DegenerateState: " << e.what() << "\n";
        return kDegenerate;
    } catch (const Error& e) {
        err << e.error_class() << ": " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kSuccess;
}

}  // namespace stdsn::cli
