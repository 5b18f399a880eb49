#include "stdsn/squeezing.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "stdsn/errors.hpp"

namespace stdsn {

namespace {

using cd = std::complex<double>;

// Normal-ordered first and second moments of the squeezed frame operators
// A = C a - S b^dag and B = C b - S a^dag between coherent states <beta| and |gamma>,
// divided by the overlap <beta|gamma>.
struct FrameMoments {
    cd a, b, aa, bb, ada, bdb, ab, adb;
};

FrameMoments frame_moments(double S, double C, cd b1, cd b2, cd g1, cd g2) {
    b1 = std::conj(b1);
    b2 = std::conj(b2);
    FrameMoments m;
    m.a = C * g1 - S * b2;
    m.b = C * g2 - S * b1;
    m.aa = C * C * g1 * g1 - 2 * C * S * b2 * g1 + S * S * b2 * b2;
    m.bb = C * C * g2 * g2 - 2 * C * S * b1 * g2 + S * S * b1 * b1;
    m.ada = C * C * b1 * g1 - C * S * (b1 * b2 + g1 * g2) + S * S * (b2 * g2 + 1.0);
    m.bdb = C * C * b2 * g2 - C * S * (b1 * b2 + g1 * g2) + S * S * (b1 * g1 + 1.0);
    m.ab = C * C * g1 * g2 - C * S * (b1 * g1 + b2 * g2 + 1.0) + S * S * b1 * b2;
    m.adb = (C * C + S * S) * b1 * g2 - C * S * (b1 * b1 + g2 * g2);
    return m;
}

}  // namespace

SqueezeFactors squeeze_factors(const StateParams& p, QuadratureRequest req) {
    if (p.n != 0 || p.m != 0) throw DomainError("closed-form squeezing requires the vacuum seed (n = m = 0)");
    if (!std::isfinite(req.nu)) throw DomainError("squeeze_factors: non-finite angle");
    DerivedQuantities d = derive(p);
    double mu = std::exp(d.log_mu);
    cd eps = std::polar(p.eps_mag, p.phi);

    // The state is lambda [S|t> + eps S|-t>] with coherent amplitudes (t1, t2).
    struct Term {
        double sign_bra, sign_ket;
        cd weight;
    };
    const Term terms[] = {{1, 1, 1.0}, {-1, -1, p.eps_mag * p.eps_mag}, {1, -1, eps * mu}, {-1, 1, std::conj(eps) * mu}};
    FrameMoments tot{};
    for (const Term& t : terms) {
        FrameMoments m = frame_moments(d.Sr, d.Cr, t.sign_bra * d.t1, t.sign_bra * d.t2, t.sign_ket * d.t1,
                                       t.sign_ket * d.t2);
        cd w = t.weight * d.lambda_sq;
        tot.a += w * m.a;
        tot.b += w * m.b;
        tot.aa += w * m.aa;
        tot.bb += w * m.bb;
        tot.ada += w * m.ada;
        tot.bdb += w * m.bdb;
        tot.ab += w * m.ab;
        tot.adb += w * m.adb;
    }

    // 4 Var and 4 Cov of the single-mode quadratures.
    auto var_x = [](cd mean, cd sq, cd num) { return 2 * sq.real() + 2 * num.real() + 1 - 4 * mean.real() * mean.real(); };
    auto var_y = [](cd mean, cd sq, cd num) { return -2 * sq.real() + 2 * num.real() + 1 - 4 * mean.imag() * mean.imag(); };

    SqueezeFactors f;
    f.F1 = var_x(tot.a, tot.aa, tot.ada) - 1;
    f.F2 = var_x(tot.b, tot.bb, tot.bdb) - 1;
    f.S1 = var_y(tot.a, tot.aa, tot.ada) - 1;
    f.S2 = var_y(tot.b, tot.bb, tot.bdb) - 1;
    f.Fc = 2 * (tot.ab.real() + tot.adb.real()) - 4 * tot.a.real() * tot.b.real();
    f.Sc = 2 * (tot.adb.real() - tot.ab.real()) - 4 * tot.a.imag() * tot.b.imag();

    double cn = std::cos(req.nu), sn = std::sin(req.nu), s2n = std::sin(2 * req.nu);
    f.F = f.F1 * cn * cn + f.F2 * sn * sn + f.Fc * s2n;
    f.S = f.S1 * cn * cn + f.S2 * sn * sn + f.Sc * s2n;
    f.nu = std::fmod(req.nu, M_PI);
    if (f.nu < 0) f.nu += M_PI;
    return f;
}

SqueezeScan min_squeeze_scan(const StateParams& p, const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("min_squeeze_scan: empty angle grid");
    SqueezeScan out;
    out.S_min = out.F_min = std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (double nu : grid) {
        SqueezeFactors f = squeeze_factors(p, {nu});
        out.S_min = std::min(out.S_min, f.S);
        out.F_min = std::min(out.F_min, f.F);
        double v = std::min(f.F, f.S);
        if (v < best || (v == best && nu < out.nu_star)) {
            best = v;
            out.nu_star = nu;
        }
    }
    return out;
}

std::vector<double> nu_grid(double lo, double hi, int count) {
    if (count < 1) throw DomainError("nu_grid: count must be positive");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
    return g;
}

double squeezing_loss_r(const StateParams& base, const std::vector<double>& grid, double lo, double hi,
                        int scan_points, double tol) {
    auto smin = [&](double r) {
        StateParams p = base;
        p.r = r;
        return min_squeeze_scan(p, grid).S_min;
    };
    double found = std::numeric_limits<double>::quiet_NaN();
    double prev_r = lo, prev_v = smin(lo);
    for (int i = 1; i <= scan_points; ++i) {
        double r = lo + (hi - lo) * i / scan_points;
        double v = smin(r);
        if (prev_v < 0 && v >= 0) {
            double a = prev_r, b = r;
            while (b - a > tol) {
                double mid = 0.5 * (a + b);
                (smin(mid) < 0 ? a : b) = mid;
            }
            found = 0.5 * (a + b);
        }
        prev_r = r;
        prev_v = v;
    }
    return found;
}

}  // namespace stdsn
