#pragma once

#include <complex>
#include <string>
#include <vector>

#include "stdsn/state.hpp"

namespace stdsn {

struct PhaseSpacePoint {
    double x = 0.0;
    double y = 0.0;
    std::complex<double> z() const { return {x, y}; }
};

struct CharFnAux {
    double k_plus = 0.0, k_minus = 0.0;
    double kp_plus = 0.0, kp_minus = 0.0;
};

struct WignerAux {
    double Lambda = 0.0;
    std::complex<double> h;
    std::complex<double> h_prime;
};

enum class QuasiKind { W, Q };
const char* to_string(QuasiKind k);

CharFnAux char_fn_aux(const StateParams& p, std::complex<double> beta);
WignerAux wigner_aux(const StateParams& p, PhaseSpacePoint z);

/// Symmetric characteristic function of mode a, Tr[rho exp(beta a^dag - conj(beta) a)].
std::complex<double> char_fn(const StateParams& p, std::complex<double> beta);

/// Closed forms for the seed n = 0 (any m).
double wigner_closed(const StateParams& p, PhaseSpacePoint z);
double qfunc_closed(const StateParams& p, PhaseSpacePoint z);

/// Fourier integral of char_fn by plane quadrature; any seed.
double quasi_numeric(const StateParams& p, PhaseSpacePoint z, QuasiKind kind, double tol = 1e-9);

/// Tr rho_a^2 in closed form for |eps| = 1 and the vacuum seed.
double purity_closed(const StateParams& p);
/// (1/pi) times the plane integral of |C_w|^2.
double purity_numeric(const StateParams& p, double tol = 1e-9);

/// exp(-i phi) mu L_m(4 t2^2).
std::complex<double> interference_integral(const StateParams& p, int m);

/// |integral of W (or Q) over the plane - 1| using the closed forms.
double normalization_residual(const StateParams& p, QuasiKind kind, double tol = 1e-9);

/// Largest r in [lo, hi] where W(z) (closed form) goes from negative to nonnegative.
/// The r field of `base` is ignored. NaN when W(z) never does so on the scan.
double wigner_sign_change_r(const StateParams& base, PhaseSpacePoint z, double lo, double hi,
                            int scan_points = 300, double tol = 1e-10);

/// Smallest r in [lo, hi] at which Q(x, 0) has a single local maximum in x on
/// [-x_max, x_max]. NaN when the profile keeps two or more peaks.
double q_peak_merge_r(const StateParams& base, double lo, double hi, double x_max, int scan_points = 100);

struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    int count = 2;
    double at(int i) const { return min + (max - min) * i / (count - 1); }
};

struct PhaseSpaceGrid {
    GridAxis x, y;
    std::vector<double> values;  // row-major, x fastest
    QuasiKind kind = QuasiKind::W;
    StateParams params;

    double value(int ix, int iy) const { return values[std::size_t(iy) * x.count + ix]; }
};

enum class GridMethod { Closed, Numeric };

PhaseSpaceGrid fill_grid(const StateParams& p, QuasiKind kind, GridAxis x, GridAxis y,
                         GridMethod method = GridMethod::Closed, double tol = 1e-9);

/// Header lines (kind, params, axes, min/max with locations) followed by x,y,value rows.
std::string grid_to_csv(const PhaseSpaceGrid& g);

}  // namespace stdsn
