#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "stdsn/errors.hpp"

namespace stdsn {

/// A real number stored as sign * exp(log_magnitude). sign == 0 is an exact zero.
struct SignedLogValue {
    int sign = 0;
    double log_magnitude = 0.0;

    static SignedLogValue from_value(double v);
    static SignedLogValue from_log(double log_magnitude, int sign = 1);
    double value() const;

    SignedLogValue operator*(const SignedLogValue& o) const;
    SignedLogValue operator/(const SignedLogValue& o) const;
    SignedLogValue operator-() const { return {-sign, log_magnitude}; }
};

SignedLogValue log_sum(std::span<const SignedLogValue> terms);

/// Generalized Laguerre polynomial L_k^v(x) by the upward three-term recurrence.
double assoc_laguerre(int k, int v, double x);
double laguerre(int n, double x);
std::complex<double> laguerre(int n, std::complex<double> x);

/// T^k L_k^v(-q/T), finite as T -> 0 where it tends to q^k / k!.
double scaled_assoc_laguerre(int k, int v, double q, double T);

double laguerre_generating_check(double t, double y, int n_max);

/// Closed form of the integral of exp(-B|b|^2 + c/2 b*^2 + c1/2 b^2 + g1 b + g b*) over the plane.
std::complex<double> gaussian_integral(std::complex<double> B, std::complex<double> c,
                                       std::complex<double> c1, std::complex<double> gamma,
                                       std::complex<double> gamma1);

}  // namespace stdsn
