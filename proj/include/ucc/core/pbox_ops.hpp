#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "ucc/core/interval_ops.hpp"
#include "ucc/core/logical.hpp"
#include "ucc/core/pbox.hpp"
#include "ucc/dist/normal.hpp"

namespace ucc {

/// Elementary functions available on uncertain numbers.
enum class Fn { exp, ln, sqrt, sin, cos, tan, arctan, neg, abs, square, reciprocal };

inline Interval apply(Fn f, const Interval& x, const FnContext& ctx = {}) {
    switch (f) {
    case Fn::exp: return exp(x);
    case Fn::ln: return ln(x);
    case Fn::sqrt: return sqrt(x, ctx);
    case Fn::sin: return sin(x);
    case Fn::cos: return cos(x);
    case Fn::tan: return tan(x);
    case Fn::arctan: return arctan(x);
    case Fn::neg: return -x;
    case Fn::abs: return abs(x);
    case Fn::square: return square(x);
    case Fn::reciprocal: return reciprocal(x);
    }
    return x;
}

namespace detail {

inline PBox from_focal(std::vector<double> lows, std::vector<double> highs) {
    std::sort(lows.begin(), lows.end());
    std::sort(highs.begin(), highs.end());
    return {std::move(lows), std::move(highs)};
}

// Reduce N*N equally weighted focal bounds to N levels, choosing for every
// block of N the outermost member.
inline PBox condense_uniform(std::vector<double> lows, std::vector<double> highs, std::size_t n) {
    std::sort(lows.begin(), lows.end());
    std::sort(highs.begin(), highs.end());
    const std::size_t per = lows.size() / n;
    std::vector<double> l(n), r(n);
    for (std::size_t k = 0; k < n; ++k) {
        l[k] = lows[k * per];
        r[k] = highs[k * per + per - 1];
    }
    return {std::move(l), std::move(r)};
}

struct Weighted {
    double value;
    double weight;
};

// Weighted version: left[k] is the first value whose cumulative mass exceeds
// k/N, right[k] the first whose mass reaches (k+1)/N, each nudged outward by
// a small tolerance to absorb summation error.
inline PBox condense_weighted(std::vector<Weighted> lows, std::vector<Weighted> highs, std::size_t n) {
    constexpr double tol = 1e-9;
    auto by_value = [](const Weighted& a, const Weighted& b) { return a.value < b.value; };
    std::sort(lows.begin(), lows.end(), by_value);
    std::sort(highs.begin(), highs.end(), by_value);
    std::vector<double> l(n), r(n);
    double cum = 0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double target = static_cast<double>(k) / static_cast<double>(n) - tol;
        while (j + 1 < lows.size() && cum + lows[j].weight <= target) cum += lows[j++].weight;
        l[k] = lows[j].value;
    }
    cum = 0;
    j = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double target = static_cast<double>(k + 1) / static_cast<double>(n) + tol;
        while (j + 1 < highs.size() && cum + highs[j].weight < target) cum += highs[j++].weight;
        r[k] = highs[j].value;
    }
    return {std::move(l), std::move(r)};
}

// Gaussian copula cell masses on the N x N grid of slice midpoints, balanced
// by iterative proportional fitting so every row and column carries 1/N.
inline std::vector<double> gaussian_copula_weights(std::size_t n, double r) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = dist::standard_normal_quantile(PBox::level(i, n));
    std::vector<double> w(n * n);
    const double s = 1 - r * r;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[i * n + j] = std::exp(-(r * r * (z[i] * z[i] + z[j] * z[j]) - 2 * r * z[i] * z[j]) / (2 * s));
    const double target = 1.0 / static_cast<double>(n);
    for (int iter = 0; iter < 200; ++iter) {
        double worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0;
            for (std::size_t j = 0; j < n; ++j) row += w[i * n + j];
            for (std::size_t j = 0; j < n; ++j) w[i * n + j] *= target / row;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double col = 0;
            for (std::size_t i = 0; i < n; ++i) col += w[i * n + j];
            worst = std::max(worst, std::abs(col - target));
            for (std::size_t i = 0; i < n; ++i) w[i * n + j] *= target / col;
        }
        if (worst < 1e-14) break;
    }
    return w;
}

inline PBox negate(const PBox& x) {
    const std::size_t n = x.steps();
    std::vector<double> l(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        l[i] = -x.right()[n - 1 - i];
        r[i] = -x.left()[n - 1 - i];
    }
    return {std::move(l), std::move(r)};
}

inline PBox reciprocal(const PBox& y) {
    if (y.support().contains_zero()) throw DivisionByUncertainZero("divisor p-box support contains zero");
    const std::size_t n = y.steps();
    std::vector<double> l(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        l[i] = rounding::div(1.0, y.right()[n - 1 - i]).down;
        r[i] = rounding::div(1.0, y.left()[n - 1 - i]).up;
    }
    return {std::move(l), std::move(r)};
}

// Focal-element pairing for the named copulas: slice i of x meets slice i of
// y (perfect), slice N-1-i (opposite) or every slice (independent).
inline PBox paired(BinOp op, const PBox& x, const PBox& y, bool comonotone) {
    const std::size_t n = x.steps();
    std::vector<double> lows(n), highs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Interval r = apply(op, x.focal(i), y.focal(comonotone ? i : n - 1 - i));
        lows[i] = r.lo();
        highs[i] = r.hi();
    }
    return from_focal(std::move(lows), std::move(highs));
}

inline PBox independent(BinOp op, const PBox& x, const PBox& y) {
    const std::size_t n = x.steps();
    std::vector<double> lows, highs;
    lows.reserve(n * n);
    highs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Interval r = apply(op, x.focal(i), y.focal(j));
            lows.push_back(r.lo());
            highs.push_back(r.hi());
        }
    return condense_uniform(std::move(lows), std::move(highs), n);
}

inline PBox correlated(BinOp op, const PBox& x, const PBox& y, double r) {
    const std::size_t n = x.steps();
    const std::vector<double> w = gaussian_copula_weights(n, r);
    std::vector<Weighted> lows, highs;
    lows.reserve(n * n);
    highs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Interval v = apply(op, x.focal(i), y.focal(j));
            lows.push_back({v.lo(), w[i * n + j]});
            highs.push_back({v.hi(), w[i * n + j]});
        }
    return condense_weighted(std::move(lows), std::move(highs), n);
}

// Fréchet bounds for a sum in dual-quantile form:
//   left_C[k]  = max_{i+j=k}     left_A[i]  + left_B[j]
//   right_C[k] = min_{i+j=N-1+k} right_A[i] + right_B[j]
inline PBox frechet_sum(const PBox& x, const PBox& y) {
    const std::size_t n = x.steps();
    std::vector<double> l(n), r(n);
    for (std::size_t k = 0; k < n; ++k) {
        double best = -rounding::kInf;
        for (std::size_t i = 0; i <= k; ++i)
            best = std::max(best, rounding::add(x.left()[i], y.left()[k - i]).down);
        l[k] = best;
        double worst = rounding::kInf;
        for (std::size_t i = k; i < n; ++i)
            worst = std::min(worst, rounding::add(x.right()[i], y.right()[n - 1 + k - i]).up);
        r[k] = worst;
    }
    return {std::move(l), std::move(r)};
}

// Fréchet product of two p-boxes with nonnegative support, via logarithms.
inline PBox frechet_product_nonneg(const PBox& x, const PBox& y) {
    const std::size_t n = x.steps();
    auto log_down = [](double v) { return v == 0 ? -rounding::kInf : rounding::libm(std::log(v)).down; };
    auto log_up = [](double v) { return v == 0 ? -rounding::kInf : rounding::libm(std::log(v)).up; };
    auto exp_down = [](double v) { return std::max(0.0, rounding::libm(std::exp(v)).down); };
    auto exp_up = [](double v) { return rounding::libm(std::exp(v)).up; };
    std::vector<double> l(n), r(n);
    for (std::size_t k = 0; k < n; ++k) {
        double best = -rounding::kInf;
        for (std::size_t i = 0; i <= k; ++i) {
            const double a = log_down(x.left()[i]), b = log_down(y.left()[k - i]);
            if (a == -rounding::kInf || b == -rounding::kInf) continue;
            if (std::isinf(a) || std::isinf(b)) { best = rounding::kInf; continue; }
            best = std::max(best, rounding::add(a, b).down);
        }
        l[k] = best == -rounding::kInf ? 0.0 : exp_down(best);
        double worst = rounding::kInf;
        for (std::size_t i = k; i < n; ++i) {
            const double a = log_up(x.right()[i]), b = log_up(y.right()[n - 1 + k - i]);
            if (a == -rounding::kInf || b == -rounding::kInf) { worst = -rounding::kInf; continue; }
            if (std::isinf(a) || std::isinf(b)) continue;
            worst = std::min(worst, rounding::add(a, b).up);
        }
        r[k] = worst == -rounding::kInf ? 0.0 : exp_up(worst);
    }
    return {std::move(l), std::move(r)};
}

inline PBox frechet_product(const PBox& x, const PBox& y, const FnContext& ctx) {
    const Interval sx = x.support(), sy = y.support();
    if (sx.interior_contains_zero() || sy.interior_contains_zero()) {
        ctx.note("frechet product on a support straddling zero: result widened to the support hull");
        return PBox::from_interval(sx * sy, x.steps());
    }
    const bool nx = sx.hi() <= 0 && sx.lo() < 0;
    const bool ny = sy.hi() <= 0 && sy.lo() < 0;
    const PBox ax = nx ? negate(x) : x;
    const PBox ay = ny ? negate(y) : y;
    const PBox r = frechet_product_nonneg(ax, ay);
    return (nx != ny) ? negate(r) : r;
}

inline PBox self_apply(BinOp op, const PBox& x, const FnContext& ctx);

} // namespace detail

/// Level-wise lift of an elementary function: each focal slice is mapped
/// through the interval function and the bounds re-sorted.
inline PBox pbox_fn(Fn f, const PBox& x, const FnContext& ctx = {}) {
    if (f == Fn::neg) return detail::negate(x);
    if (f == Fn::reciprocal) return detail::reciprocal(x);
    const std::size_t n = x.steps();
    std::vector<double> lows(n), highs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Interval r = apply(f, x.focal(i), ctx);
        lows[i] = r.lo();
        highs[i] = r.hi();
    }
    PBox out = detail::from_focal(std::move(lows), std::move(highs));
    return out.with_ensemble(x.ensemble());
}

/// Integer power of a single p-box.
inline PBox pbox_pow(const PBox& x, int k) {
    const std::size_t n = x.steps();
    std::vector<double> lows(n), highs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Interval r = pow(x.focal(i), k);
        lows[i] = r.lo();
        highs[i] = r.hi();
    }
    return detail::from_focal(std::move(lows), std::move(highs));
}

/// Arithmetic on p-boxes under a stated dependence.
///
/// Subtraction and division are routed through x + (-y) and x * (1/y), with
/// perfect and opposite dependence swapped for the transformed operand.
inline PBox pbox_binop(BinOp op, const PBox& x0, const PBox& y0, DepKind dep = DepKind::frechet(),
                       const FnContext& ctx = {}) {
    const std::size_t n = std::max(x0.steps(), y0.steps());
    const PBox x = x0.resampled(n);
    const PBox y = y0.resampled(n);
    dep = dep.canonical();
    if (dep.tag() == DepKind::Tag::equal) {
        if (x == y) return detail::self_apply(op, x, ctx);
        dep = DepKind::perfect();
    }
    if (op == BinOp::sub) return pbox_binop(BinOp::add, x, detail::negate(y), dep.mirrored(), ctx);
    if (op == BinOp::div) return pbox_binop(BinOp::mul, x, detail::reciprocal(y), dep.mirrored(), ctx);
    switch (dep.tag()) {
    case DepKind::Tag::perfect: return detail::paired(op, x, y, true);
    case DepKind::Tag::opposite: return detail::paired(op, x, y, false);
    case DepKind::Tag::independent: return detail::independent(op, x, y);
    case DepKind::Tag::rho: return detail::correlated(op, x, y, dep.r());
    default: break;
    }
    if (op == BinOp::add) return detail::frechet_sum(x, y);
    return detail::frechet_product(x, y, ctx);
}

inline PBox detail::self_apply(BinOp op, const PBox& x, const FnContext& ctx) {
    switch (op) {
    case BinOp::add: return pbox_binop(BinOp::mul, PBox::point(2.0, x.steps()), x, DepKind::perfect(), ctx);
    case BinOp::sub: return PBox::point(0.0, x.steps());
    case BinOp::mul: return pbox_fn(Fn::square, x, ctx);
    case BinOp::div:
        if (x.support().contains_zero()) throw DivisionByUncertainZero("divisor p-box support contains zero");
        return PBox::point(1.0, x.steps());
    }
    return x;
}

/// Comparison of p-boxes through the difference D = x - y: the attached
/// probability interval bounds Pr(D < 0) (or the matching event for the other
/// operators).
inline Logical pbox_compare(CmpOp op, const PBox& x, const PBox& y, DepKind dep = DepKind::frechet(),
                            const FnContext& ctx = {}) {
    if (op == CmpOp::identical) return Logical::of(x == y);
    if (op == CmpOp::eq) {
        if (interval_compare(CmpOp::eq, x.support(), y.support()).is_false()) return Logical::of(false);
        if (x.is_point() && y.is_point() && x.support() == y.support()) return Logical::of(true);
        return Logical::dunno();
    }
    const PBox d = pbox_binop(BinOp::sub, x, y, dep, ctx);
    switch (op) {
    case CmpOp::lt: return Logical::from_probability(d.cdf_strict(0.0));
    case CmpOp::le: return Logical::from_probability(d.cdf(0.0));
    case CmpOp::gt: {
        const Interval le = d.cdf(0.0);
        return Logical::from_probability({1.0 - le.hi(), 1.0 - le.lo()});
    }
    case CmpOp::ge: {
        const Interval lt = d.cdf_strict(0.0);
        return Logical::from_probability({1.0 - lt.hi(), 1.0 - lt.lo()});
    }
    default: break;
    }
    return Logical::dunno();
}

} // namespace ucc
