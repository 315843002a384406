#pragma once

// Directed rounding without touching the FPU control word. Each operation
// computes the round-to-nearest result and then uses an error-free
// transformation (TwoSum, FMA residuals) to learn on which side of the exact
// value it landed. The enclosing pair is therefore the tightest pair of
// doubles around the exact real result, and collapses to a single double
// whenever the operation happened to be exact.

#include <cmath>
#include <limits>

namespace ucc::rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lower and upper double bracketing an exact real result.
struct Enclosure {
    double down;
    double up;
};

inline double next_down(double x) { return std::nextafter(x, -kInf); }
inline double next_up(double x) { return std::nextafter(x, kInf); }

namespace detail {

// Below this magnitude FMA residuals may themselves be rounded.
inline constexpr double kTiny = 0x1p-960;

inline Enclosure from_residual(double r, double residual_sign) {
    if (residual_sign > 0) return {r, next_up(r)};
    if (residual_sign < 0) return {next_down(r), r};
    return {r, r};
}

inline Enclosure overflowed(double r) {
    // a finite computation that overflowed: the exact value is finite
    if (r > 0) return {std::numeric_limits<double>::max(), kInf};
    return {-kInf, -std::numeric_limits<double>::max()};
}

inline Enclosure widen_both(double r) { return {next_down(r), next_up(r)}; }

} // namespace detail

inline Enclosure add(double a, double b) {
    const double s = a + b;
    if (std::isinf(a) || std::isinf(b)) return {s, s};
    if (std::isinf(s)) return detail::overflowed(s);
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return detail::from_residual(s, err);
}

inline Enclosure sub(double a, double b) { return add(a, -b); }

/// Product with the interval convention 0 * inf = 0.
inline Enclosure mul(double a, double b) {
    if (a == 0.0 || b == 0.0) return {0.0, 0.0};
    const double p = a * b;
    if (std::isinf(a) || std::isinf(b)) return {p, p};
    if (std::isinf(p)) return detail::overflowed(p);
    if (std::abs(p) < detail::kTiny) return detail::widen_both(p);
    return detail::from_residual(p, std::fma(a, b, -p));
}

inline Enclosure div(double a, double b) {
    const double q = a / b;
    if (a == 0.0) return {q, q};
    if (std::isinf(a) || std::isinf(b)) return {q, q};
    if (std::isinf(q)) return detail::overflowed(q);
    if (std::abs(q) < detail::kTiny || std::abs(a) < detail::kTiny) return detail::widen_both(q);
    const double r = std::fma(-q, b, a); // a - q*b exactly
    const double sign = (r == 0.0) ? 0.0 : ((r > 0) == (b > 0) ? 1.0 : -1.0);
    return detail::from_residual(q, sign);
}

inline Enclosure sqrt(double x) {
    const double s = std::sqrt(x);
    if (x == 0.0 || std::isinf(x)) return {s, s};
    if (x < detail::kTiny) return detail::widen_both(s);
    return detail::from_residual(s, std::fma(-s, s, x));
}

/// Enclosure for a library transcendental accurate to within one ulp.
inline Enclosure libm(double r) {
    if (std::isinf(r)) return {r, r};
    return detail::widen_both(r);
}

} // namespace ucc::rounding
