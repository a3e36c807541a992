#ifndef WPCN_SPECIAL_FUNCTIONS_HPP
#define WPCN_SPECIAL_FUNCTIONS_HPP

/// \file special_functions.hpp
/// Incomplete gamma functions and integer-order modified Bessel functions of
/// the second kind.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wpcn {

namespace detail {

inline constexpr int kMaxIter = 10000;
inline constexpr double kEps = 1e-16;
inline constexpr double kTiny = 1e-300;

// P(s, x) by its power series; converges quickly for x < s + 1.
inline double gamma_p_series(double s, double x) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Q(s, x) by its continued fraction (modified Lentz); for x >= s + 1.
inline double gamma_q_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

inline void check_gamma_args(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("incomplete gamma: shape must be positive");
    if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: argument must be non-negative");
}

} // namespace detail

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
inline double regularized_gamma_p(double s, double x) {
    detail::check_gamma_args(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return detail::gamma_p_series(s, x);
    return 1.0 - detail::gamma_q_fraction(s, x);
}

/// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x), without cancellation.
inline double regularized_gamma_q(double s, double x) {
    detail::check_gamma_args(s, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return 1.0 - detail::gamma_p_series(s, x);
    return detail::gamma_q_fraction(s, x);
}

/// Lower incomplete gamma, integral of t^(s-1) e^(-t) over [0, x].
inline double lower_incomplete_gamma(double s, double x) {
    return regularized_gamma_p(s, x) * std::tgamma(s);
}

// Modified Bessel functions used by the small-argument K series.
inline double bessel_i0(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < detail::kMaxIter; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * detail::kEps) break;
    }
    return sum;
}

inline double bessel_i1(double x) {
    const double q = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int k = 1; k < detail::kMaxIter; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < std::abs(sum) * detail::kEps) break;
    }
    return sum;
}

namespace detail {

struct BesselKPair {
    double k0, k1;
};

// x <= 2: ascending series with digamma coefficients,
//   K0 = -ln(x/2) I0 + sum psi(k+1) q^k / (k!)^2
//   K1 = 1/x + ln(x/2) I1 - (x/4) sum [psi(k+1) + psi(k+2)] q^k / (k! (k+1)!)
// with q = x^2/4.
inline BesselKPair bessel_k01_series(double x) {
    const double q = 0.25 * x * x;
    const double log_half = std::log(0.5 * x);
    double psi_k1 = -std::numbers::egamma; // psi(k+1)
    double psi_k2 = psi_k1 + 1.0;           // psi(k+2)
    double t0 = 1.0;                        // q^k / (k!)^2
    double t1 = 1.0;                        // q^k / (k! (k+1)!)
    double s0 = psi_k1 * t0;
    double s1 = (psi_k1 + psi_k2) * t1;
    for (int k = 1; k < kMaxIter; ++k) {
        t0 *= q / (static_cast<double>(k) * k);
        t1 *= q / (static_cast<double>(k) * (k + 1));
        psi_k1 += 1.0 / k;
        psi_k2 += 1.0 / (k + 1);
        const double d0 = psi_k1 * t0;
        const double d1 = (psi_k1 + psi_k2) * t1;
        s0 += d0;
        s1 += d1;
        if (std::abs(d0) < std::abs(s0) * kEps && std::abs(d1) < std::abs(s1) * kEps) break;
    }
    return {-log_half * bessel_i0(x) + s0, 1.0 / x + log_half * bessel_i1(x) - 0.25 * x * s1};
}

// x > 2: Steed's continued fraction for K_nu / K_{nu+1} at nu = 0 (Temme's CF2).
inline BesselKPair bessel_k01_fraction(double x) {
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < kMaxIter; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    h *= a1;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

inline BesselKPair bessel_k01(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k: argument must be positive");
    return x <= 2.0 ? bessel_k01_series(x) : bessel_k01_fraction(x);
}

} // namespace detail

inline double bessel_k0(double x) { return detail::bessel_k01(x).k0; }
inline double bessel_k1(double x) { return detail::bessel_k01(x).k1; }

/// K_n(x) for integer n >= 0 by upward recurrence K_{m+1} = K_{m-1} + (2m/x) K_m,
/// which is stable for K.
inline double bessel_k(int order, double x) {
    if (order < 0) throw std::domain_error("bessel_k: order must be non-negative");
    auto [km1, k] = detail::bessel_k01(x);
    if (order == 0) return km1;
    for (int m = 1; m < order; ++m) {
        const double next = km1 + (2.0 * m / x) * k;
        km1 = k;
        k = next;
    }
    return k;
}

} // namespace wpcn

#endif
