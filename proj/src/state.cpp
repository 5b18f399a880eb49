#include "stdsn/state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include "stdsn/errors.hpp"
#include "stdsn/specfun.hpp"

namespace stdsn {

namespace {

SignedLogValue power(double x, int k) {
    if (k == 0) return {1, 0.0};
    if (x == 0.0) return {0, 0.0};
    int sign = (x < 0 && (k % 2 == 1)) ? -1 : 1;
    return {sign, k * std::log(std::abs(x))};
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

double parse_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw DomainError("invalid value for " + key + ": '" + text + "'");
    }
    if (used != text.size()) throw DomainError("invalid value for " + key + ": '" + text + "'");
    return v;
}

// Angles also accept multiples of pi: "pi", "-pi/2", "0.5pi", "3*pi/4".
double parse_angle(const std::string& key, const std::string& text) {
    auto pos = text.find("pi");
    if (pos == std::string::npos) return parse_real(key, text);
    std::string head = text.substr(0, pos);
    std::string tail = text.substr(pos + 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    double factor = 1.0;
    if (head == "-")
        factor = -1.0;
    else if (!head.empty() && head != "+")
        factor = parse_real(key, head);
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail[0] != '/') throw DomainError("invalid angle for " + key + ": '" + text + "'");
        divisor = parse_real(key, tail.substr(1));
    }
    return factor * M_PI / divisor;
}

int parse_int(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw DomainError("invalid integer for " + key + ": '" + text + "'");
    }
    if (used != text.size()) throw DomainError("invalid integer for " + key + ": '" + text + "'");
    return int(v);
}

}  // namespace

void StateParams::validate() const {
    for (double v : {r, alpha1, alpha2, eps_mag, phi})
        if (!std::isfinite(v)) throw DomainError("state parameters must be finite");
    if (eps_mag < 0) throw DomainError("eps_mag must be nonnegative");
    if (n < 0 || m < 0) throw DomainError("seed occupations must be nonnegative");
}

std::complex<double> StateParams::eps() const { return std::polar(eps_mag, phi); }

StateParams StateParams::swapped() const {
    StateParams q = *this;
    std::swap(q.alpha1, q.alpha2);
    std::swap(q.n, q.m);
    return q;
}

NamedStateClass classify(const StateParams& p) {
    if (p.eps_mag == 0.0) return NamedStateClass::SingleBranch;
    if (near(p.eps_mag, 1.0)) {
        double c = std::cos(p.phi), s = std::sin(p.phi);
        if (near(c, 1.0)) return NamedStateClass::Even;
        if (near(c, -1.0)) return NamedStateClass::Odd;
        if (near(c, 0.0) && s > 0) return NamedStateClass::Yurke;
    }
    return NamedStateClass::General;
}

const char* to_string(NamedStateClass c) {
    switch (c) {
        case NamedStateClass::Even: return "even";
        case NamedStateClass::Odd: return "odd";
        case NamedStateClass::Yurke: return "yurke";
        case NamedStateClass::SingleBranch: return "single-branch";
        case NamedStateClass::General: return "general";
    }
    return "general";
}

DerivedQuantities derive(const StateParams& p) {
    p.validate();
    DerivedQuantities d;
    d.Sr = std::sinh(p.r);
    d.Cr = std::cosh(p.r);
    d.t1 = p.alpha1 * d.Cr + p.alpha2 * d.Sr;
    d.t2 = p.alpha2 * d.Cr + p.alpha1 * d.Sr;
    d.log_mu = -2.0 * (d.t1 * d.t1 + d.t2 * d.t2);
    double th = std::tanh(p.r);
    d.mu1 = p.alpha1 + p.alpha2 * th;
    d.mu2 = p.alpha2 + p.alpha1 * th;

    double overlap = laguerre(p.n, 4 * d.t1 * d.t1) * laguerre(p.m, 4 * d.t2 * d.t2);
    std::array<SignedLogValue, 3> terms = {
        SignedLogValue{1, 0.0},
        SignedLogValue::from_value(p.eps_mag * p.eps_mag),
        SignedLogValue::from_value(2 * p.eps_mag * std::cos(p.phi) * overlap) *
            SignedLogValue::from_log(d.log_mu),
    };
    double inv = log_sum(terms).value();
    if (!(inv > 1e-14))
        throw DegenerateState("superposition norm vanishes (|lambda|^-2 = " + format_double(inv) + ")");
    d.lambda_sq = 1.0 / inv;
    return d;
}

std::complex<double> fock_coefficient(const StateParams& p, int n1, int n2) {
    if (p.n != 0 || p.m != 0) throw DomainError("fock_coefficient requires the vacuum seed (n = m = 0)");
    if (n1 < 0 || n2 < 0) throw DomainError("fock_coefficient: negative occupation");
    DerivedQuantities d = derive(p);

    double s = ((n1 + n2) % 2 == 0) ? 1.0 : -1.0;
    double c = std::cos(p.phi), sn = std::sin(p.phi);
    double branch_sq = 1.0 + p.eps_mag * p.eps_mag + 2.0 * s * p.eps_mag * c;
    if (branch_sq == 0.0) return 0.0;
    std::complex<double> branch(1.0 + s * p.eps_mag * c, s * p.eps_mag * sn);

    int M = std::min(n1, n2), N = std::max(n1, n2);
    double T = -std::tanh(p.r);
    double q = d.mu1 * d.mu2;
    double kernel;
    if (std::abs(p.r) < 1e-6) {
        kernel = power(q, M).value() / std::tgamma(M + 1.0);
    } else {
        kernel = scaled_assoc_laguerre(M, N - M, q, T);
    }

    SignedLogValue mag =
        SignedLogValue::from_log(0.5 * std::log(d.lambda_sq) - 0.5 * (p.alpha1 * d.mu1 + p.alpha2 * d.mu2) -
                                 std::log(d.Cr) + 0.5 * (std::lgamma(M + 1.0) - std::lgamma(N + 1.0))) *
        power(d.mu1, n1 - M) * power(d.mu2, n2 - M) * SignedLogValue::from_value(kernel);
    return mag.value() * branch;
}

double joint_pnd(const StateParams& p, int m1, int m2) { return std::norm(fock_coefficient(p, m1, m2)); }

FockTable::FockTable(const StateParams& p, int cutoff) : cutoff_(cutoff) {
    if (cutoff < 1) throw DomainError("FockTable: cutoff must be positive");
    amp_.resize(std::size_t(cutoff) * cutoff);
    prob_.resize(amp_.size());
    for (int i = 0; i < cutoff; ++i)
        for (int j = 0; j < cutoff; ++j) {
            auto a = fock_coefficient(p, i, j);
            amp_[std::size_t(i) * cutoff + j] = a;
            prob_[std::size_t(i) * cutoff + j] = std::norm(a);
        }
}

double FockTable::total() const {
    double s = 0.0;
    for (double v : prob_) s += v;
    return s;
}

double FockTable::tail() const { return std::max(0.0, 1.0 - total()); }

double FockTable::marginal_a(int m1) const {
    if (m1 < 0 || m1 >= cutoff_) throw DomainError("marginal: occupation outside the table");
    double s = 0.0;
    for (int j = 0; j < cutoff_; ++j) s += probability(m1, j);
    return s;
}

double FockTable::marginal_b(int m2) const {
    if (m2 < 0 || m2 >= cutoff_) throw DomainError("marginal: occupation outside the table");
    double s = 0.0;
    for (int i = 0; i < cutoff_; ++i) s += probability(i, m2);
    return s;
}

int initial_cutoff(const StateParams& p) {
    double sr = std::sinh(p.r);
    double mean = p.alpha1 * p.alpha1 + p.alpha2 * p.alpha2 + sr * sr;
    return std::max(20, int(std::ceil(4 * mean)) + p.n + p.m);
}

FockTable certified_fock_table(const StateParams& p, double tol, int max_cutoff) {
    int cutoff = initial_cutoff(p);
    while (true) {
        FockTable table(p, cutoff);
        if (table.tail() < tol) return table;
        if (cutoff * 2 > max_cutoff)
            throw InsufficientCutoff("Fock table tail " + format_double(table.tail()) + " at cutoff " +
                                         std::to_string(cutoff),
                                     table.tail());
        cutoff *= 2;
    }
}

MarginalProbability marginal_pnd(const StateParams& p, int m1, int cutoff) {
    if (m1 < 0) throw DomainError("marginal_pnd: negative occupation");
    if (m1 >= cutoff) throw DomainError("marginal_pnd: occupation must be below the cutoff");
    FockTable table(p, cutoff);
    return {table.marginal_a(m1), table.tail()};
}

double marginal_pnd_r0(const StateParams& p, int m1) {
    if (p.r != 0.0 || !near(p.eps_mag, 1.0) || p.n != 0 || p.m != 0)
        throw DomainError("marginal_pnd_r0 requires r = 0, |eps| = 1 and the vacuum seed");
    if (m1 < 0) throw DomainError("marginal_pnd_r0: negative occupation");
    DerivedQuantities d = derive(p);
    double a2 = p.alpha1 * p.alpha1;
    double poisson = std::exp(-a2 + m1 * (a2 > 0 ? std::log(a2) : 0.0) - std::lgamma(m1 + 1.0));
    if (a2 == 0.0) poisson = (m1 == 0) ? 1.0 : 0.0;
    double sign = (m1 % 2 == 0) ? 1.0 : -1.0;
    return 2 * d.lambda_sq * poisson *
           (1 + sign * std::exp(-2 * p.alpha2 * p.alpha2) * std::cos(p.phi));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string to_record(const StateParams& p) {
    std::ostringstream os;
    os << "r=" << format_double(p.r) << " alpha1=" << format_double(p.alpha1)
       << " alpha2=" << format_double(p.alpha2) << " eps_mag=" << format_double(p.eps_mag)
       << " phi=" << format_double(p.phi) << " n=" << p.n << " m=" << p.m;
    return os.str();
}

StateParams parse_record(const std::string& text, const StateParams& base) {
    StateParams p = base;
    std::istringstream lines(text);
    std::string line;
    static const std::regex around_eq(R"(\s*=\s*)");
    static const std::regex separators(R"([\s,;]+)");
    while (std::getline(lines, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = std::regex_replace(line, around_eq, "=");
        std::sregex_token_iterator it(line.begin(), line.end(), separators, -1), end;
        for (; it != end; ++it) {
            std::string tok = *it;
            if (tok.empty()) continue;
            auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0) throw DomainError("malformed record entry '" + tok + "'");
            std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
            if (key == "r") p.r = parse_real(key, value);
            else if (key == "alpha1") p.alpha1 = parse_real(key, value);
            else if (key == "alpha2") p.alpha2 = parse_real(key, value);
            else if (key == "eps_mag" || key == "eps") p.eps_mag = parse_real(key, value);
            else if (key == "phi") p.phi = parse_angle(key, value);
            else if (key == "n") p.n = parse_int(key, value);
            else if (key == "m") p.m = parse_int(key, value);
            else throw DomainError("unknown record key '" + key + "'");
        }
    }
    p.validate();
    return p;
}

}  // namespace stdsn
