#pragma once

#include <vector>

#include "stdsn/state.hpp"

namespace stdsn {

/// Quadratures X = X1 cos(nu) + X2 sin(nu), Y likewise, with X1 = (a + a^dag)/2 and
/// Y1 = (a - a^dag)/(2i). F = 4 Var(X) - 1 and S = 4 Var(Y) - 1, so the vacuum gives zero.
struct QuadratureRequest {
    double nu = 0.0;
};

struct SqueezeFactors {
    double F = 0.0;
    double S = 0.0;
    double F1 = 0.0, F2 = 0.0, Fc = 0.0;
    double S1 = 0.0, S2 = 0.0, Sc = 0.0;
    double nu = 0.0;  // request angle reduced to [0, pi)

    bool squeezed_x() const { return F < 0; }
    bool squeezed_y() const { return S < 0; }
};

SqueezeFactors squeeze_factors(const StateParams& p, QuadratureRequest req);

struct SqueezeScan {
    double nu_star = 0.0;  // angle of the most negative of F and S on the grid
    double S_min = 0.0;
    double F_min = 0.0;
};

SqueezeScan min_squeeze_scan(const StateParams& p, const std::vector<double>& nu_grid);

/// Evenly spaced angles on [lo, hi], endpoints included.
std::vector<double> nu_grid(double lo, double hi, int count);

/// Largest r in [lo, hi] at which min over the grid of S changes from negative to
/// nonnegative, located by bisection after a scan with `scan_points` samples.
/// The r field of `base` is ignored. Returns NaN when no such crossing exists.
double squeezing_loss_r(const StateParams& base, const std::vector<double>& nu_grid, double lo, double hi,
                        int scan_points = 64, double tol = 1e-10);

}  // namespace stdsn
