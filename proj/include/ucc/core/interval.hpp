#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "ucc/core/rounding.hpp"
#include "ucc/errors.hpp"

namespace ucc {

/// Closed interval [lo, hi] over the extended reals. lo may be -inf and hi
/// may be +inf; an interval consisting only of an infinity is rejected.
class Interval {
public:
    Interval() = default;
    Interval(double value) : Interval(value, value) {} // NOLINT: scalars promote implicitly
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi)) throw ArithmeticError("interval endpoint is NaN (undefined inf - inf?)");
        if (lo > hi) throw MalformedInterval("interval lower bound exceeds upper bound");
        if (lo == rounding::kInf || hi == -rounding::kInf) throw ArithmeticError("interval lies entirely at infinity");
    }

    static Interval hull(std::initializer_list<double> values) {
        return {std::min(values), std::max(values)};
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }
    double mid() const { return lo_ + (hi_ - lo_) / 2; }
    bool degenerate() const { return lo_ == hi_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const { return contains(0.0); }
    bool interior_contains_zero() const { return lo_ < 0.0 && 0.0 < hi_; }

    friend bool operator==(const Interval&, const Interval&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Interval& x) {
        return os << '[' << x.lo_ << ", " << x.hi_ << ']';
    }

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

namespace detail {

inline double down_of(const rounding::Enclosure& e) { return e.down; }
inline double up_of(const rounding::Enclosure& e) { return e.up; }

template <typename Op>
Interval corner_hull(const Interval& x, const Interval& y, Op op) {
    const rounding::Enclosure c[4] = {op(x.lo(), y.lo()), op(x.lo(), y.hi()), op(x.hi(), y.lo()),
                                      op(x.hi(), y.hi())};
    double lo = c[0].down;
    double hi = c[0].up;
    for (const auto& e : c) {
        lo = std::min(lo, e.down);
        hi = std::max(hi, e.up);
    }
    return {lo, hi};
}

} // namespace detail

inline Interval operator+(const Interval& x, const Interval& y) {
    return {rounding::add(x.lo(), y.lo()).down, rounding::add(x.hi(), y.hi()).up};
}

inline Interval operator-(const Interval& x) { return {-x.hi(), -x.lo()}; }

inline Interval operator-(const Interval& x, const Interval& y) {
    return {rounding::sub(x.lo(), y.hi()).down, rounding::sub(x.hi(), y.lo()).up};
}

inline Interval operator*(const Interval& x, const Interval& y) {
    return detail::corner_hull(x, y, rounding::mul);
}

inline Interval reciprocal(const Interval& y) {
    if (y.contains_zero()) throw DivisionByUncertainZero("divisor interval contains zero");
    return {rounding::div(1.0, y.hi()).down, rounding::div(1.0, y.lo()).up};
}

inline Interval operator/(const Interval& x, const Interval& y) {
    if (y.contains_zero()) throw DivisionByUncertainZero("divisor interval contains zero");
    const bool finite = std::isfinite(x.lo()) && std::isfinite(x.hi()) && std::isfinite(y.lo()) &&
                        std::isfinite(y.hi());
    if (!finite) return x * reciprocal(y);
    return detail::corner_hull(x, y, rounding::div);
}

/// Intersection of two enclosures of the same quantity.
inline Interval intersect(const Interval& x, const Interval& y) {
    const double lo = std::max(x.lo(), y.lo());
    const double hi = std::min(x.hi(), y.hi());
    if (lo > hi) throw EmptyIntersection("intersection of disjoint enclosures is empty");
    return {lo, hi};
}

inline Interval hull(const Interval& x, const Interval& y) {
    return {std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi())};
}

// ---------------------------------------------------------------------------
// Elementary functions

/// Behaviour of sqrt on arguments that reach below zero.
enum class SqrtPolicy {
    clamp,  ///< drop the negative part and flag a diagnostic
    strict, ///< raise DomainError
};

/// Options and a diagnostics sink shared by the uncertain-number operations.
struct FnContext {
    SqrtPolicy sqrt_policy = SqrtPolicy::clamp;
    /// Receives a note whenever a policy or fallback silently altered a result.
    std::vector<std::string>* notes = nullptr;

    void note(const std::string& msg) const {
        if (notes) notes->push_back(msg);
    }
};

namespace detail {

// Enclosure of f(v) where f is a libm function, exact when v equals the
// anchor point whose image is known exactly.
template <typename F>
rounding::Enclosure point_enclosure(double v, F f, double anchor, double anchor_value) {
    if (v == anchor) return {anchor_value, anchor_value};
    const double r = f(v);
    if (std::isinf(v)) return {r, r};
    return rounding::libm(r);
}

template <typename F>
Interval monotone_up(const Interval& x, F f, double anchor, double anchor_value) {
    return {point_enclosure(x.lo(), f, anchor, anchor_value).down,
            point_enclosure(x.hi(), f, anchor, anchor_value).up};
}

template <typename F>
Interval endpoint_hull(const Interval& x, F f, double anchor, double anchor_value) {
    const auto a = point_enclosure(x.lo(), f, anchor, anchor_value);
    const auto b = point_enclosure(x.hi(), f, anchor, anchor_value);
    return {std::min(a.down, b.down), std::max(a.up, b.up)};
}

inline constexpr double kPi = std::numbers::pi;

// Does [lo, hi] contain a point of the form offset + k*period?
inline bool hits_lattice(double lo, double hi, double offset, double period) {
    const double k = std::ceil((lo - offset) / period);
    return offset + k * period <= hi;
}

// |v|^k for v >= 0 rounded in the requested direction.
inline double pow_nonneg(double v, int k, bool up) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = up ? rounding::mul(r, v).up : rounding::mul(r, v).down;
    return r;
}

} // namespace detail

inline Interval exp(const Interval& x) {
    const Interval r = detail::monotone_up(x, [](double v) { return std::exp(v); }, 0.0, 1.0);
    return {std::max(0.0, r.lo()), r.hi()};
}

inline Interval ln(const Interval& x) {
    if (x.lo() <= 0.0) throw DomainError("ln of an interval reaching zero or below");
    return detail::monotone_up(x, [](double v) { return std::log(v); }, 1.0, 0.0);
}

inline Interval sqrt(const Interval& x, const FnContext& ctx = {}) {
    Interval arg = x;
    if (x.lo() < 0.0) {
        if (ctx.sqrt_policy == SqrtPolicy::strict || x.hi() < 0.0)
            throw DomainError("sqrt of an interval reaching below zero");
        ctx.note("sqrt: negative part of argument ignored");
        arg = Interval(0.0, x.hi());
    }
    const double hi = std::isinf(arg.hi()) ? arg.hi() : rounding::sqrt(arg.hi()).up;
    return {rounding::sqrt(arg.lo()).down, hi};
}

inline Interval sin(const Interval& x) {
    if (!std::isfinite(x.lo()) || !std::isfinite(x.hi()) || x.width() >= 2 * detail::kPi) return {-1.0, 1.0};
    const Interval e = detail::endpoint_hull(x, [](double v) { return std::sin(v); }, 0.0, 0.0);
    double lo = std::max(-1.0, e.lo());
    double hi = std::min(1.0, e.hi());
    if (detail::hits_lattice(x.lo(), x.hi(), detail::kPi / 2, 2 * detail::kPi)) hi = 1.0;
    if (detail::hits_lattice(x.lo(), x.hi(), -detail::kPi / 2, 2 * detail::kPi)) lo = -1.0;
    return {lo, hi};
}

inline Interval cos(const Interval& x) {
    if (!std::isfinite(x.lo()) || !std::isfinite(x.hi()) || x.width() >= 2 * detail::kPi) return {-1.0, 1.0};
    const Interval e = detail::endpoint_hull(x, [](double v) { return std::cos(v); }, 0.0, 1.0);
    double lo = std::max(-1.0, e.lo());
    double hi = std::min(1.0, e.hi());
    if (detail::hits_lattice(x.lo(), x.hi(), 0.0, 2 * detail::kPi)) hi = 1.0;
    if (detail::hits_lattice(x.lo(), x.hi(), detail::kPi, 2 * detail::kPi)) lo = -1.0;
    return {lo, hi};
}

inline Interval tan(const Interval& x) {
    const Interval whole{-rounding::kInf, rounding::kInf};
    if (!std::isfinite(x.lo()) || !std::isfinite(x.hi()) || x.width() >= detail::kPi) return whole;
    // the double nearest pi/2 sits below the true pole, so probe a slightly wider range
    const double slack = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x.hi()));
    if (detail::hits_lattice(x.lo() - slack, x.hi() + slack, detail::kPi / 2, detail::kPi)) return whole;
    return detail::monotone_up(x, [](double v) { return std::tan(v); }, 0.0, 0.0);
}

inline Interval arctan(const Interval& x) {
    const Interval r = detail::monotone_up(x, [](double v) { return std::atan(v); }, 0.0, 0.0);
    const double bound = rounding::next_up(detail::kPi / 2);
    return {std::max(-bound, r.lo()), std::min(bound, r.hi())};
}

inline Interval abs(const Interval& x) {
    if (x.lo() >= 0.0) return x;
    if (x.hi() <= 0.0) return -x;
    return {0.0, std::max(-x.lo(), x.hi())};
}

/// Integer power of a single quantity: even powers use the |x| envelope, so
/// pow(x, 2) is the dependent square rather than x*x of two unknowns.
inline Interval pow(const Interval& x, int k) {
    if (k == 0) return {1.0, 1.0};
    if (k < 0) return reciprocal(pow(x, -k));
    if (k % 2 == 0) {
        const Interval a = abs(x);
        return {detail::pow_nonneg(a.lo(), k, false), detail::pow_nonneg(a.hi(), k, true)};
    }
    auto odd = [k](double v, bool up) {
        return v >= 0 ? detail::pow_nonneg(v, k, up) : -detail::pow_nonneg(-v, k, !up);
    };
    return {odd(x.lo(), false), odd(x.hi(), true)};
}

inline Interval square(const Interval& x) { return pow(x, 2); }

/// Real power x^y for scalar y; fractional exponents need x >= 0.
inline Interval pow(const Interval& x, double y) {
    if (y == std::floor(y) && std::abs(y) < 1024) return pow(x, static_cast<int>(y));
    if (x.lo() < 0.0) throw DomainError("fractional power of an interval reaching below zero");
    if (x.lo() == 0.0) {
        const Interval upper = exp(Interval(y) * ln(Interval(x.hi() > 0 ? x.hi() : 1.0)));
        if (y < 0) throw DivisionByUncertainZero("negative power of an interval reaching zero");
        return {0.0, x.hi() > 0 ? upper.hi() : 0.0};
    }
    return exp(Interval(y) * ln(x));
}

} // namespace ucc
