#pragma once

#include <optional>
#include <string>
#include <variant>

#include "ucc/core/decimal.hpp"
#include "ucc/core/interval.hpp"
#include "ucc/dist/distributions.hpp"

namespace ucc {

/// Natural-language hedges on a number.
enum class Hedge { about, around, count, almost, over, above, below, at_most, at_least, order, between, out_of };

inline std::optional<Hedge> hedge_from_words(const std::string& w) {
    if (w == "about") return Hedge::about;
    if (w == "around") return Hedge::around;
    if (w == "count") return Hedge::count;
    if (w == "almost") return Hedge::almost;
    if (w == "over") return Hedge::over;
    if (w == "above") return Hedge::above;
    if (w == "below") return Hedge::below;
    if (w == "at most") return Hedge::at_most;
    if (w == "at least") return Hedge::at_least;
    if (w == "order") return Hedge::order;
    if (w == "between") return Hedge::between;
    if (w == "out of") return Hedge::out_of;
    return std::nullopt;
}

inline const char* words(Hedge h) {
    switch (h) {
    case Hedge::about: return "about";
    case Hedge::around: return "around";
    case Hedge::count: return "count";
    case Hedge::almost: return "almost";
    case Hedge::over: return "over";
    case Hedge::above: return "above";
    case Hedge::below: return "below";
    case Hedge::at_most: return "at most";
    case Hedge::at_least: return "at least";
    case Hedge::order: return "order";
    case Hedge::between: return "between";
    case Hedge::out_of: return "out of";
    }
    return "?";
}

/// Interval reading of a hedge together with the exact decimal endpoints when
/// they have a finite decimal expansion (used for emitting source text).
struct HedgeBounds {
    Interval value;
    std::optional<Decimal> lo_exact;
    std::optional<Decimal> hi_exact;
};

namespace detail {

inline HedgeBounds exact_bounds(const Decimal& lo, const Decimal& hi) {
    const double l = lo.down(), h = hi.up();
    if (l > h) throw MalformedHedge("hedge produces an empty interval");
    return {Interval(l, h), lo, hi};
}

} // namespace detail

/// Interval interpretation of a hedged number. The spread unit is 10^-d,
/// d being the number of digits after the decimal point of x as written.
/// `y` is the second number of "between x and y".
inline HedgeBounds hedge_interval(Hedge h, const Decimal& x, const std::optional<Decimal>& y = std::nullopt) {
    const int e = x.exponent();
    switch (h) {
    case Hedge::about: return detail::exact_bounds(x.plus_units(-2), x.plus_units(2));
    case Hedge::around: return detail::exact_bounds(x.plus_units(-10), x.plus_units(10));
    case Hedge::almost: return detail::exact_bounds(x.rescaled(e - 1).plus_units(-5), x);
    case Hedge::over: return detail::exact_bounds(x, x.rescaled(e - 1).plus_units(5));
    case Hedge::above: return detail::exact_bounds(x, x.plus_units(2));
    case Hedge::below: return detail::exact_bounds(x.plus_units(-2), x);
    case Hedge::at_most:
        if (x.mantissa() < 0) throw MalformedHedge("'at most' needs a nonnegative number");
        return detail::exact_bounds(Decimal(0, 0), x);
    case Hedge::at_least: return {Interval(x.down(), rounding::kInf), x, std::nullopt};
    case Hedge::order: {
        if (x.mantissa() < 0) throw MalformedHedge("'order' needs a nonnegative number");
        const Interval v(x.down(), x.up());
        const Interval lo = v / Interval(2.0);
        const Interval hi = v * Interval(5.0);
        return {Interval(lo.lo(), hi.hi()), std::nullopt, Decimal(x.mantissa() * 5, e)};
    }
    case Hedge::count: {
        if (x.mantissa() < 0) throw MalformedHedge("'count' needs a nonnegative number");
        const Interval v(x.down(), x.up());
        const Interval s = sqrt(v);
        const Interval lo = v - s, hi = v + s;
        return {Interval(lo.lo(), hi.hi()), std::nullopt, std::nullopt};
    }
    case Hedge::between:
        if (!y) throw MalformedHedge("'between' needs two numbers");
        return detail::exact_bounds(x, *y);
    case Hedge::out_of: break;
    }
    throw MalformedHedge(std::string("hedge '") + words(h) + "' does not denote an interval");
}

/// "k out of n" as a confidence box.
inline PBox hedge_out_of(const Decimal& k, const Decimal& n, std::size_t steps = kDefaultSteps) {
    auto as_count = [](const Decimal& d) {
        if (d.exponent() < 0) {
            const Decimal r = d;
            std::int64_t m = r.mantissa();
            for (int i = r.exponent(); i < 0; ++i) {
                if (m % 10 != 0) throw MalformedHedge("'out of' needs whole counts");
                m /= 10;
            }
            return static_cast<long>(m);
        }
        return static_cast<long>(d.rescaled(0).mantissa());
    };
    return dist::kn_cbox(as_count(k), as_count(n), steps);
}

} // namespace ucc
