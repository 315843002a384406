#pragma once

#include "ucc/core/dependence.hpp"
#include "ucc/core/interval.hpp"

namespace ucc {

enum class BinOp { add, sub, mul, div };

inline char symbol(BinOp op) {
    switch (op) {
    case BinOp::add: return '+';
    case BinOp::sub: return '-';
    case BinOp::mul: return '*';
    case BinOp::div: return '/';
    }
    return '?';
}

/// Dependence-free interval arithmetic.
inline Interval apply(BinOp op, const Interval& x, const Interval& y) {
    switch (op) {
    case BinOp::add: return x + y;
    case BinOp::sub: return x - y;
    case BinOp::mul: return x * y;
    case BinOp::div: return x / y;
    }
    return x;
}

/// x op x for one and the same quantity.
inline Interval apply_self(BinOp op, const Interval& x) {
    switch (op) {
    case BinOp::add: return Interval(2.0) * x;
    case BinOp::sub: return {0.0, 0.0};
    case BinOp::mul: return square(x);
    case BinOp::div:
        if (x.contains_zero()) throw DivisionByUncertainZero("divisor interval contains zero");
        return {1.0, 1.0};
    }
    return x;
}

namespace detail {

// Operands co-vary along a straight path: x(s) = x.lo + s*wx and
// y(s) = y.lo + s*wy (comonotone) or y.hi - s*wy (countermonotone), s in [0,1].
inline Interval linear_path(BinOp op, const Interval& x, const Interval& y, bool comonotone) {
    const Interval y0 = comonotone ? Interval(y.lo()) : Interval(y.hi());
    const Interval y1 = comonotone ? Interval(y.hi()) : Interval(y.lo());
    if (op == BinOp::div && y.contains_zero()) throw DivisionByUncertainZero("divisor interval contains zero");
    Interval r = hull(apply(op, Interval(x.lo()), y0), apply(op, Interval(x.hi()), y1));
    if (op != BinOp::mul) return r; // sums, differences and Moebius maps are monotone along the path
    const Interval wx = Interval(x.hi()) - Interval(x.lo());
    const Interval wy = y1 - y0;
    const Interval a = wx * wy;
    if (a.contains_zero()) return r;
    const Interval b = Interval(x.lo()) * wy + y0 * wx;
    const Interval s = -b / (Interval(2.0) * a);
    if (s.hi() <= 0.0 || s.lo() >= 1.0) return r;
    const Interval vertex = Interval(x.lo()) * y0 - square(b) / (Interval(4.0) * a);
    return hull(r, vertex);
}

} // namespace detail

/// Interval arithmetic under a stated dependence. Fréchet, independence and
/// intermediate correlations all give the plain interval result; perfect and
/// opposite dependence pair the operands along a comonotone or
/// countermonotone path.
inline Interval interval_binop(BinOp op, const Interval& x, const Interval& y, DepKind dep = DepKind::frechet()) {
    switch (dep.canonical().tag()) {
    case DepKind::Tag::perfect: return detail::linear_path(op, x, y, true);
    case DepKind::Tag::opposite: return detail::linear_path(op, x, y, false);
    case DepKind::Tag::equal:
        if (x == y) return apply_self(op, x);
        return detail::linear_path(op, x, y, true);
    default: return apply(op, x, y);
    }
}

} // namespace ucc
