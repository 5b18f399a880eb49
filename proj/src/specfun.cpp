#include "stdsn/specfun.hpp"

#include <algorithm>
#include <limits>

namespace stdsn {

namespace {

template <class T>
T laguerre_recurrence(int k, int v, T x) {
    if (k < 0 || v < 0) throw DomainError("assoc_laguerre: negative degree or order");
    if (!std::isfinite(std::abs(x))) throw DomainError("assoc_laguerre: non-finite argument");
    T prev(1.0);
    if (k == 0) return prev;
    T cur = T(1.0 + v) - x;
    for (int j = 1; j < k; ++j) {
#ifdef STDSN_MUTATE_LAGUERRE
        T next = (T(2.0 * j + 1.0 + v) - x) * cur - T(j + v + 0.5) * prev;
#else
        T next = (T(2.0 * j + 1.0 + v) - x) * cur - T(double(j + v)) * prev;
#endif
        next /= T(double(j + 1));
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

SignedLogValue SignedLogValue::from_value(double v) {
    if (std::isnan(v)) throw DomainError("SignedLogValue: NaN");
    if (v == 0.0) return {0, 0.0};
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

SignedLogValue SignedLogValue::from_log(double log_magnitude, int sign) {
    if (sign == 0) return {0, 0.0};
    if (log_magnitude == -std::numeric_limits<double>::infinity()) return {0, 0.0};
    return {sign > 0 ? 1 : -1, log_magnitude};
}

double SignedLogValue::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_magnitude);
}

SignedLogValue SignedLogValue::operator*(const SignedLogValue& o) const {
    if (sign == 0 || o.sign == 0) return {0, 0.0};
    return {sign * o.sign, log_magnitude + o.log_magnitude};
}

SignedLogValue SignedLogValue::operator/(const SignedLogValue& o) const {
    if (o.sign == 0) throw DomainError("SignedLogValue: division by zero");
    if (sign == 0) return {0, 0.0};
    return {sign * o.sign, log_magnitude - o.log_magnitude};
}

SignedLogValue log_sum(std::span<const SignedLogValue> terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sign != 0) top = std::max(top, t.log_magnitude);
    if (top == -std::numeric_limits<double>::infinity()) return {0, 0.0};

    // Positive and negative parts are accumulated separately so that the
    // result does not depend on the order of the terms beyond rounding.
    std::vector<double> pos, neg;
    for (const auto& t : terms) {
        if (t.sign == 0) continue;
        double w = std::exp(t.log_magnitude - top);
        (t.sign > 0 ? pos : neg).push_back(w);
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    double p = 0.0, n = 0.0;
    for (double w : pos) p += w;
    for (double w : neg) n += w;
    double s = p - n;
    if (s == 0.0) return {0, 0.0};
    return {s > 0 ? 1 : -1, top + std::log(std::abs(s))};
}

double assoc_laguerre(int k, int v, double x) { return laguerre_recurrence<double>(k, v, x); }

double laguerre(int n, double x) { return laguerre_recurrence<double>(n, 0, x); }

std::complex<double> laguerre(int n, std::complex<double> x) {
    return laguerre_recurrence<std::complex<double>>(n, 0, x);
}

double scaled_assoc_laguerre(int k, int v, double q, double T) {
    if (k < 0 || v < 0) throw DomainError("scaled_assoc_laguerre: negative degree or order");
    if (!std::isfinite(q) || !std::isfinite(T)) throw DomainError("scaled_assoc_laguerre: non-finite argument");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = (1.0 + v) * T + q;
    for (int j = 1; j < k; ++j) {
#ifdef STDSN_MUTATE_LAGUERRE
        double next = ((2.0 * j + 1.0 + v) * T + q) * cur - (j + v + 0.5) * T * T * prev;
#else
        double next = ((2.0 * j + 1.0 + v) * T + q) * cur - double(j + v) * T * T * prev;
#endif
        next /= double(j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre_generating_check(double t, double y, int n_max) {
    if (!(std::abs(t) < 1.0)) throw DomainError("laguerre_generating_check: |t| must be < 1");
    if (n_max < 0) throw DomainError("laguerre_generating_check: negative n_max");
    double exact = std::exp(-t * y / (1.0 - t)) / (1.0 - t);
    double sum = 0.0, tn = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        sum += tn * laguerre(n, y);
        tn *= t;
    }
    return std::abs(exact - sum);
}

std::complex<double> gaussian_integral(std::complex<double> B, std::complex<double> c,
                                       std::complex<double> c1, std::complex<double> gamma,
                                       std::complex<double> gamma1) {
    std::complex<double> K = B * B - c * c1;
    if (!(std::real(B + 0.5 * (c + c1)) > 0.0) || !(std::real(K) > 0.0))
        throw DivergenceError("gaussian_integral: validity condition violated");
    std::complex<double> e = (gamma * gamma1 * B + gamma * gamma * 0.5 * c1 + gamma1 * gamma1 * 0.5 * c) / K;
    return M_PI / std::sqrt(K) * std::exp(e);
}

}  // namespace stdsn
