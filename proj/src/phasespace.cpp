#include "stdsn/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>

#include "stdsn/errors.hpp"
#include "stdsn/quadrature.hpp"
#include "stdsn/specfun.hpp"

namespace stdsn {

namespace {

using cd = std::complex<double>;

class CharFnEvaluator {
public:
    explicit CharFnEvaluator(const StateParams& p) : p_(p), d_(derive(p)) {
        c2r_ = d_.Cr * d_.Cr + d_.Sr * d_.Sr;
        norm_ = bracket(0.0);
    }

    cd operator()(cd beta) const { return bracket(beta) / norm_; }
    const DerivedQuantities& derived() const { return d_; }

private:
    cd bracket(cd beta) const {
        double b2 = std::norm(beta);
        double S = d_.Sr, C = d_.Cr, e = p_.eps_mag;
        double v = beta.imag();
        cd direct = std::exp(-0.5 * b2 * c2r_) *
                    (std::polar(1.0, 2 * p_.alpha1 * v) + e * e * std::polar(1.0, -2 * p_.alpha1 * v)) *
                    laguerre(p_.m, S * S * b2) * laguerre(p_.n, C * C * b2);
        if (e == 0.0) return direct;
        double kp = std::norm(beta * C + 2 * d_.t1), km = std::norm(beta * C - 2 * d_.t1);
        double kpp = std::norm(std::conj(beta) * S + 2 * d_.t2), kpm = std::norm(std::conj(beta) * S - 2 * d_.t2);
        cd cross = std::polar(std::exp(-0.5 * (kp + kpp)), -p_.phi) * laguerre(p_.m, kpp) * laguerre(p_.n, kp) +
                   std::polar(std::exp(-0.5 * (km + kpm)), p_.phi) * laguerre(p_.m, kpm) * laguerre(p_.n, km);
        return direct + e * cross;
    }

    StateParams p_;
    DerivedQuantities d_;
    double c2r_ = 1.0;
    cd norm_ = 1.0;
};

class ClosedQuasi {
public:
    explicit ClosedQuasi(const StateParams& p) : p_(p), d_(derive(p)) {
        if (p.n != 0) throw DomainError("closed-form W and Q require the seed n = 0");
        c_ = d_.Cr * d_.Cr + d_.Sr * d_.Sr;
        Lambda_ = d_.t1 * d_.Cr + d_.t2 * d_.Sr;
        th_ = std::tanh(p.r);
        w_pref_ = 2 * d_.lambda_sq / (M_PI * std::pow(c_, p.m + 1));
        q_pref_ = d_.lambda_sq / (M_PI * std::pow(d_.Cr * d_.Cr, p.m + 1));
    }

    double wigner(PhaseSpacePoint z) const {
        double S = d_.Sr, C = d_.Cr, c = c_, e = p_.eps_mag;
        double dm = (z.x - p_.alpha1) * (z.x - p_.alpha1) + z.y * z.y;
        double dp = (z.x + p_.alpha1) * (z.x + p_.alpha1) + z.y * z.y;
        double k = 4 * S * S / c;
        double body = std::exp(-2 * dm / c) * laguerre(p_.m, -k * dm) +
                      e * e * std::exp(-2 * dp / c) * laguerre(p_.m, -k * dp);
        if (e != 0.0) {
            double z2 = z.x * z.x + z.y * z.y;
            double env = std::exp(-2.0 / c * (p_.alpha2 * p_.alpha2 + z2));
            cd h = 4.0 / c * cd(p_.alpha2 * p_.alpha2 * C * C - S * S * z2, z.y * p_.alpha2 * 2 * S * C);
            cd phase = std::polar(1.0, -p_.phi - 4 * z.y * Lambda_ / c);
            body += 2 * e * env * std::real(phase * laguerre(p_.m, h));
        }
        return w_pref_ * body;
    }

    double husimi(PhaseSpacePoint z) const {
        double S = d_.Sr, C = d_.Cr, C2 = C * C, th = th_, e = p_.eps_mag;
        double dm = (z.x - p_.alpha1) * (z.x - p_.alpha1) + z.y * z.y;
        double dp = (z.x + p_.alpha1) * (z.x + p_.alpha1) + z.y * z.y;
        double body = std::exp(-dm / C2) * laguerre(p_.m, -dm * th * th) +
                      e * e * std::exp(-dp / C2) * laguerre(p_.m, -dp * th * th);
        if (e != 0.0) {
            double z2 = z.x * z.x + z.y * z.y;
            double env = std::exp(-(p_.alpha1 * p_.alpha1 + 2 * d_.t2 * d_.t2 + z2) / C2);
            double u = p_.alpha2 * C + d_.t2;
            cd hp = cd(u * u - z2 * S * S, 2 * z.y * S * (2 * p_.alpha2 * C + p_.alpha1 * S)) / C2;
            cd phase = std::polar(1.0, -p_.phi - 2 * z.y * Lambda_ / C2);
            body += 2 * e * env * std::real(phase * laguerre(p_.m, hp));
        }
        return q_pref_ * body;
    }

    double eval(QuasiKind k, PhaseSpacePoint z) const { return k == QuasiKind::W ? wigner(z) : husimi(z); }
    const DerivedQuantities& derived() const { return d_; }
    double Lambda() const { return Lambda_; }

private:
    StateParams p_;
    DerivedQuantities d_;
    double c_ = 1.0, Lambda_ = 0.0, th_ = 0.0, w_pref_ = 0.0, q_pref_ = 0.0;
};

void require_n_zero(const StateParams& p, const char* what) {
    if (p.n != 0) throw DomainError(std::string(what) + " requires the seed n = 0");
}

double cosh2r(const DerivedQuantities& d) { return d.Cr * d.Cr + d.Sr * d.Sr; }

double initial_half_width(const StateParams& p, double c, double shift) {
    return 4.0 * std::max(1.0, std::sqrt(c)) + shift + 2.0 * (std::abs(p.alpha1) + std::abs(p.alpha2));
}

}  // namespace

const char* to_string(QuasiKind k) { return k == QuasiKind::W ? "W" : "Q"; }

CharFnAux char_fn_aux(const StateParams& p, std::complex<double> beta) {
    DerivedQuantities d = derive(p);
    CharFnAux a;
    a.k_plus = std::norm(beta * d.Cr + 2 * d.t1);
    a.k_minus = std::norm(beta * d.Cr - 2 * d.t1);
    a.kp_plus = std::norm(std::conj(beta) * d.Sr + 2 * d.t2);
    a.kp_minus = std::norm(std::conj(beta) * d.Sr - 2 * d.t2);
    return a;
}

WignerAux wigner_aux(const StateParams& p, PhaseSpacePoint z) {
    DerivedQuantities d = derive(p);
    double S = d.Sr, C = d.Cr, c = cosh2r(d), s2 = 2 * S * C;
    double z2 = z.x * z.x + z.y * z.y;
    WignerAux a;
    a.Lambda = d.t1 * C + d.t2 * S;
    a.h = 4.0 / c * cd(p.alpha2 * p.alpha2 * C * C - S * S * z2, z.y * p.alpha2 * s2);
    double u = p.alpha2 * C + d.t2;
    a.h_prime = cd(u * u - z2 * S * S, 2 * z.y * S * (2 * p.alpha2 * C + p.alpha1 * S)) / (C * C);
    return a;
}

std::complex<double> char_fn(const StateParams& p, std::complex<double> beta) {
    return CharFnEvaluator(p)(beta);
}

double wigner_closed(const StateParams& p, PhaseSpacePoint z) { return ClosedQuasi(p).wigner(z); }

double qfunc_closed(const StateParams& p, PhaseSpacePoint z) { return ClosedQuasi(p).husimi(z); }

double quasi_numeric(const StateParams& p, PhaseSpacePoint z, QuasiKind kind, double tol) {
    CharFnEvaluator cw(p);
    double c = cosh2r(cw.derived());
    double zr = std::hypot(z.x, z.y);
    PlaneQuadrature q;
    q.tol = tol;
    q.half_width = initial_half_width(p, c, zr);
    q.panel_width = std::min({1.0, 1.5 / std::sqrt(c), 6.0 / (1.0 + 2 * zr + 2 * std::abs(p.alpha1))});
    double damp = kind == QuasiKind::Q ? 0.5 : 0.0;
    auto f = [&](double u, double v) {
        cd beta(u, v);
        double b2 = u * u + v * v;
        return cw(beta) * std::polar(std::exp(-damp * b2), 2 * (z.y * u - z.x * v));
    };
    return std::real(integrate_plane(f, q)) / (M_PI * M_PI);
}

double purity_closed(const StateParams& p) {
    if (std::abs(p.eps_mag - 1.0) > 1e-12 || p.n != 0 || p.m != 0)
        throw DomainError("purity_closed requires |eps| = 1 and the vacuum seed");
    DerivedQuantities d = derive(p);
    double c = cosh2r(d);
    double Lambda = d.t1 * d.Cr + d.t2 * d.Sr;
    double a1 = p.alpha1;
    double cphi = std::cos(p.phi);
    std::vector<SignedLogValue> terms = {
        {1, 0.0},
        SignedLogValue::from_value(std::cos(2 * p.phi)) * SignedLogValue::from_log(2 * d.log_mu),
        SignedLogValue::from_log(-4 * a1 * a1 / c),
        SignedLogValue::from_value(4 * cphi) * SignedLogValue::from_log(d.log_mu + (Lambda * Lambda - a1 * a1) / c),
        SignedLogValue::from_log(2 * d.log_mu + 4 * Lambda * Lambda / c),
    };
    SignedLogValue pref = SignedLogValue::from_log(std::log(2.0) + 2 * std::log(d.lambda_sq) - std::log(c));
    return (pref * log_sum(terms)).value();
}

double purity_numeric(const StateParams& p, double tol) {
    CharFnEvaluator cw(p);
    double c = cosh2r(cw.derived());
    PlaneQuadrature q;
    q.tol = tol;
    q.half_width = initial_half_width(p, c, 0.0);
    q.panel_width = std::min({1.0, 1.5 / std::sqrt(c), 6.0 / (1.0 + 2 * std::abs(p.alpha1))});
    auto f = [&](double u, double v) { return cd(std::norm(cw(cd(u, v))), 0.0); };
    return std::real(integrate_plane(f, q)) / M_PI;
}

std::complex<double> interference_integral(const StateParams& p, int m) {
    if (m < 0) throw DomainError("interference_integral: negative order");
    p.validate();
    double S = std::sinh(p.r), C = std::cosh(p.r);
    double t1 = p.alpha1 * C + p.alpha2 * S, t2 = p.alpha2 * C + p.alpha1 * S;
    double Lambda = t1 * C + t2 * S;
    double lhs1 = (p.alpha1 * p.alpha1 + 2 * t2 * t2 + Lambda * Lambda) / (C * C);
    double rhs1 = 2 * (t1 * t1 + t2 * t2);
    double w = 2 * p.alpha2 * C + p.alpha1 * S + S * Lambda;
    double lhs2 = w * w / (C * C * C * C);
    double rhs2 = 4 * t2 * t2;
    if (std::abs(lhs1 - rhs1) > 1e-12 * std::max(1.0, rhs1) || std::abs(lhs2 - rhs2) > 1e-12 * std::max(1.0, rhs2))
        throw std::logic_error("interference_integral: auxiliary identities violated");
    return std::polar(std::exp(-rhs1) * laguerre(m, rhs2), -p.phi);
}

double normalization_residual(const StateParams& p, QuasiKind kind, double tol) {
    require_n_zero(p, "normalization_residual");
    DerivedQuantities d = derive(p);
    double c = cosh2r(d);
    double Lambda = d.t1 * d.Cr + d.t2 * d.Sr;
    PlaneQuadrature q;
    q.tol = tol;
    q.half_width = initial_half_width(p, c, 0.0) + 2.0 * std::sqrt(double(p.m));
    double freq = 4 * std::abs(Lambda) / c;
    q.panel_width = std::min({1.0, 0.5 * std::sqrt(c), 6.0 / (1.0 + freq)});
    ClosedQuasi eval(p);
    auto f = [&](double x, double y) { return cd(eval.eval(kind, {x, y}), 0.0); };
    return std::abs(std::real(integrate_plane(f, q)) - 1.0);
}

double wigner_sign_change_r(const StateParams& base, PhaseSpacePoint z, double lo, double hi, int scan_points,
                            double tol) {
    auto w = [&](double r) {
        StateParams p = base;
        p.r = r;
        return wigner_closed(p, z);
    };
    double found = std::numeric_limits<double>::quiet_NaN();
    double prev_r = lo, prev_v = w(lo);
    for (int i = 1; i <= scan_points; ++i) {
        double r = lo + (hi - lo) * i / scan_points;
        double v = w(r);
        if (prev_v < 0 && v >= 0) {
            double a = prev_r, b = r;
            while (b - a > tol) {
                double mid = 0.5 * (a + b);
                (w(mid) < 0 ? a : b) = mid;
            }
            found = 0.5 * (a + b);
        }
        prev_r = r;
        prev_v = v;
    }
    return found;
}

double q_peak_merge_r(const StateParams& base, double lo, double hi, double x_max, int scan_points) {
    const int samples = 801;
    for (int i = 0; i <= scan_points; ++i) {
        StateParams p = base;
        p.r = lo + (hi - lo) * i / scan_points;
        std::vector<double> prof(samples);
        ClosedQuasi q(p);
        for (int k = 0; k < samples; ++k) prof[k] = q.husimi({-x_max + 2 * x_max * k / (samples - 1), 0.0});
        int peaks = 0;
        for (int k = 1; k + 1 < samples; ++k)
            if (prof[k] > prof[k - 1] && prof[k] >= prof[k + 1]) ++peaks;
        if (peaks == 1) return p.r;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

PhaseSpaceGrid fill_grid(const StateParams& p, QuasiKind kind, GridAxis x, GridAxis y, GridMethod method,
                         double tol) {
    if (x.count < 2 || y.count < 2) throw DomainError("grid axes need at least two points");
    if (!(x.min < x.max) || !(y.min < y.max)) throw DomainError("grid axes need min < max");
    if (method == GridMethod::Closed) require_n_zero(p, "closed-form grid");
    derive(p);
    std::optional<ClosedQuasi> closed;
    if (method == GridMethod::Closed) closed.emplace(p);
    PhaseSpaceGrid g;
    g.x = x;
    g.y = y;
    g.kind = kind;
    g.params = p;
    long total = long(x.count) * y.count;
    g.values.assign(total, 0.0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (long idx = 0; idx < total; ++idx) {
        try {
            PhaseSpacePoint z{x.at(int(idx % x.count)), y.at(int(idx / x.count))};
            double v;
            if (method == GridMethod::Closed)
                v = closed->eval(kind, z);
            else
                v = quasi_numeric(p, z, kind, tol);
            g.values[idx] = v;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return g;
}

std::string grid_to_csv(const PhaseSpaceGrid& g) {
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < g.values.size(); ++i) {
        if (g.values[i] < g.values[imin]) imin = i;
        if (g.values[i] > g.values[imax]) imax = i;
    }
    auto loc = [&](std::size_t i) {
        return format_double(g.x.at(int(i % g.x.count))) + "," + format_double(g.y.at(int(i / g.x.count)));
    };
    std::ostringstream os;
    os << "# kind=" << to_string(g.kind) << "\n";
    os << "# params=" << to_record(g.params) << "\n";
    os << "# x=" << format_double(g.x.min) << ":" << format_double(g.x.max) << ":" << g.x.count << "\n";
    os << "# y=" << format_double(g.y.min) << ":" << format_double(g.y.max) << ":" << g.y.count << "\n";
    os << "# min=" << format_double(g.values[imin]) << " at=" << loc(imin) << "\n";
    os << "# max=" << format_double(g.values[imax]) << " at=" << loc(imax) << "\n";
    os << "x,y,value\n";
    for (int iy = 0; iy < g.y.count; ++iy)
        for (int ix = 0; ix < g.x.count; ++ix)
            os << format_double(g.x.at(ix)) << "," << format_double(g.y.at(iy)) << ","
               << format_double(g.value(ix, iy)) << "\n";
    return os.str();
}

}  // namespace stdsn
