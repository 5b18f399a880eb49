#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "stdsn/errors.hpp"

namespace stdsn {

struct PlaneQuadrature {
    double tol = 1e-9;
    double half_width = 8.0;   // initial R of the square [-R, R]^2
    double panel_width = 1.0;  // initial panel edge length
    int max_levels = 6;
};

namespace detail {

constexpr int kGaussPoints = 20;

struct GaussRule {
    std::array<double, kGaussPoints> x{};
    std::array<double, kGaussPoints> w{};
    GaussRule() {
        using G = boost::math::quadrature::gauss<double, kGaussPoints>;
        const auto& a = G::abscissa();
        const auto& wt = G::weights();
        int half = kGaussPoints / 2;
        for (int i = 0; i < half; ++i) {
            x[half - 1 - i] = -a[i];
            w[half - 1 - i] = wt[i];
            x[half + i] = a[i];
            w[half + i] = wt[i];
        }
    }
};

inline const GaussRule& gauss_rule() {
    static const GaussRule rule;
    return rule;
}

template <class F>
std::complex<double> tensor_gauss(F&& f, double R, int panels) {
    const auto& g = gauss_rule();
    double h = 2.0 * R / panels;
    int n = panels * kGaussPoints;
    std::vector<double> nodes(n), weights(n);
    for (int p = 0; p < panels; ++p) {
        double mid = -R + (p + 0.5) * h;
        for (int i = 0; i < kGaussPoints; ++i) {
            nodes[p * kGaussPoints + i] = mid + 0.5 * h * g.x[i];
            weights[p * kGaussPoints + i] = 0.5 * h * g.w[i];
        }
    }
    std::complex<double> total = 0.0;
    for (int j = 0; j < n; ++j) {
        std::complex<double> row = 0.0;
        for (int i = 0; i < n; ++i) row += weights[i] * f(nodes[i], nodes[j]);
        total += weights[j] * row;
    }
    return total;
}

}  // namespace detail

/// Integral of f(x, y) over the plane. Refinement alternates between doubling
/// the square and halving the panels; it stops once two successive levels
/// agree to `tol` (after at least one refinement of each kind).
template <class F>
std::complex<double> integrate_plane(F&& f, const PlaneQuadrature& q) {
    double R = q.half_width;
    int panels = std::max(2, int(std::ceil(2.0 * R / q.panel_width)));
    std::complex<double> prev = detail::tensor_gauss(f, R, panels);
    for (int level = 1; level <= q.max_levels; ++level) {
        if (level % 2 == 1) {
            R *= 2.0;
            panels *= 2;
        } else {
            panels *= 2;
        }
        std::complex<double> cur = detail::tensor_gauss(f, R, panels);
        if (level >= 2 && std::abs(cur - prev) < q.tol) return cur;
        if (!std::isfinite(std::abs(cur)))
            throw ConvergenceFailure("integrate_plane: non-finite integrand", std::real(prev), std::real(cur));
        if (level == q.max_levels)
            throw ConvergenceFailure("integrate_plane: no convergence after " + std::to_string(level) +
                                         " refinements",
                                     std::real(prev), std::real(cur));
        prev = cur;
    }
    return prev;
}

}  // namespace stdsn
