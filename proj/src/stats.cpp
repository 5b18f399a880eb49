#include "stdsn/stats.hpp"

#include <cmath>
#include <initializer_list>
#include <vector>

#include "stdsn/errors.hpp"
#include "stdsn/specfun.hpp"

namespace stdsn {

namespace {

void require_vacuum_seed(const StateParams& p) {
    if (p.n != 0 || p.m != 0) throw DomainError("closed-form moments require the vacuum seed (n = m = 0)");
}

struct Moment {
    const StateParams& p;
    const DerivedQuantities& d;

    // lambda^2 [ (1 + |eps|^2) direct + 2 |eps| mu cos(phi) bracket ]
    double assemble(std::initializer_list<double> direct, std::initializer_list<double> bracket) const {
        std::vector<SignedLogValue> terms;
        SignedLogValue incoherent = SignedLogValue::from_value(1.0 + p.eps_mag * p.eps_mag);
        SignedLogValue coherent = SignedLogValue::from_value(2.0 * p.eps_mag * std::cos(p.phi)) *
                                  SignedLogValue::from_log(d.log_mu);
        for (double t : direct) terms.push_back(incoherent * SignedLogValue::from_value(t));
        for (double t : bracket) terms.push_back(coherent * SignedLogValue::from_value(t));
        SignedLogValue sum = log_sum(terms) * SignedLogValue::from_value(d.lambda_sq);
        return sum.value();
    }
};

// Mode-A expressions in terms of (alpha1, alpha2, t1, t2); mode B is the interchange.
double mean_a(const StateParams& p, const DerivedQuantities& d, double a1, double t1, double t2) {
    double S = d.Sr, C = d.Cr;
    return Moment{p, d}.assemble({S * S, a1 * a1},
                                 {S * S, -4 * t1 * t2 * S * C, 2 * a1 * t2 * S, -2 * a1 * t1 * C, a1 * a1});
}

double second_a(const StateParams& p, const DerivedQuantities& d, double a1, double t1, double t2) {
    double S = d.Sr, C = d.Cr;
    double a2 = a1 * a1, S2 = S * S, C2 = C * C;
    return Moment{p, d}.assemble(
        {a2 * a2, 2 * S2 * S2, 4 * a2 * S2},
        {4 * a2 * C2 * t1 * t1, 16 * S2 * C2 * t1 * t1 * t2 * t2, 16 * a1 * S * C2 * t1 * t1 * t2, a2 * a2,
         4 * a2 * S2 * t2 * t2, 2 * S2 * S2, 8 * a1 * S2 * S * t2, 4 * a2 * a1 * S * t2, 4 * a2 * S2,
         -4 * a2 * a1 * C * t1, -16 * a1 * S2 * C * t1 * t2 * t2, -16 * S2 * S * C * t1 * t2,
         -16 * a2 * S * C * t1 * t2, -8 * a1 * S2 * C * t1});
}

}  // namespace

double mean_photon(const StateParams& p, Mode mode) {
    require_vacuum_seed(p);
    DerivedQuantities d = derive(p);
    return mode == Mode::A ? mean_a(p, d, p.alpha1, d.t1, d.t2) : mean_a(p, d, p.alpha2, d.t2, d.t1);
}

double second_moment(const StateParams& p, Mode mode) {
    require_vacuum_seed(p);
    DerivedQuantities d = derive(p);
    return mode == Mode::A ? second_a(p, d, p.alpha1, d.t1, d.t2) : second_a(p, d, p.alpha2, d.t2, d.t1);
}

double cross_moment(const StateParams& p) {
    require_vacuum_seed(p);
    DerivedQuantities d = derive(p);
    double S = d.Sr, C = d.Cr, a1 = p.alpha1, a2 = p.alpha2, t1 = d.t1, t2 = d.t2;
    double s2 = 2 * S * C, c2 = C * C + S * S;
    double u = a1 * C - a2 * S, v = a1 * S - a2 * C;
    double sc = S * C - a1 * a2;
    return Moment{p, d}.assemble(
        {S * S * S * S, sc * sc, (a1 * a1 + a2 * a2) * S * S},
        {S * S * c2, -a1 * a2 * s2, (a1 * a1 + a2 * a2) * S * S,
         -2 * t1 * t2 * s2 * (2 * S * S + a1 * a1 + a2 * a2 + c2), 4 * a1 * a2 * c2 * t1 * t2,
         4 * s2 * s2 * t1 * t1 * t2 * t2, 2 * t2 * (-S * s2 * a2 + a1 * S * c2 - a1 * a2 * u),
         -2 * t1 * (u * S * S + v * sc), -4 * s2 * t1 * t2 * t2 * v, 4 * s2 * t1 * t1 * t2 * u,
         -2 * a1 * a2 * s2 * (t1 * t1 + t2 * t2), a1 * a1 * a2 * a2});
}

double g2(const StateParams& p, Mode mode) {
    double n = mean_photon(p, mode);
    if (!(n > 1e-12)) throw UndefinedStatistic("g2: mean photon number vanishes");
    return second_moment(p, mode) / (n * n) - 1.0;
}

double g2_r0(const StateParams& p) {
    require_vacuum_seed(p);
    if (p.r != 0.0) throw DomainError("g2_r0 requires r = 0");
    derive(p);
    double k = 2 * p.eps_mag * std::exp(-2 * (p.alpha1 * p.alpha1 + p.alpha2 * p.alpha2)) * std::cos(p.phi);
    double e2 = 1 + p.eps_mag * p.eps_mag;
    double num = e2 + k, den = e2 - k;
    if (!(std::abs(den) > 1e-12) || p.alpha1 == 0.0)
        throw UndefinedStatistic("g2: mean photon number vanishes");
    return num * num / (den * den) - 1.0;
}

double cs_factor(const StateParams& p) {
    double x = cross_moment(p);
    if (!(x > 1e-12)) throw UndefinedStatistic("cs_factor: cross moment vanishes");
    double a = second_moment(p, Mode::A), b = second_moment(p, Mode::B);
    return std::sqrt(std::max(0.0, a) * std::max(0.0, b)) / x - 1.0;
}

}  // namespace stdsn
