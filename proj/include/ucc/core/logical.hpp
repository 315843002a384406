#pragma once

#include <optional>
#include <string>

#include "ucc/core/interval.hpp"

namespace ucc {

/// Three-valued truth with an optional probability interval.
class Logical {
public:
    enum class State { false_, true_, dunno };

    constexpr Logical() = default;
    constexpr explicit Logical(State s) : state_(s) {}
    static Logical of(bool b) { return Logical(b ? State::true_ : State::false_); }
    static Logical dunno() { return Logical(State::dunno); }

    /// From a probability that the proposition holds; the state follows the
    /// interval ([1,1] true, [0,0] false, otherwise dunno).
    static Logical from_probability(const Interval& p) {
        Logical l;
        l.prob_ = Interval(std::max(0.0, p.lo()), std::min(1.0, p.hi()));
        if (l.prob_->lo() == 1.0) l.state_ = State::true_;
        else if (l.prob_->hi() == 0.0) l.state_ = State::false_;
        else l.state_ = State::dunno;
        return l;
    }

    State state() const { return state_; }
    bool is_true() const { return state_ == State::true_; }
    bool is_false() const { return state_ == State::false_; }
    bool is_dunno() const { return state_ == State::dunno; }
    const std::optional<Interval>& probability() const { return prob_; }

    /// The truth value as an interval: [1,1], [0,0] or the dunno interval [0,1]
    /// (narrowed by the probability when one is attached).
    Interval as_interval() const {
        if (prob_) return *prob_;
        if (is_true()) return {1.0, 1.0};
        if (is_false()) return {0.0, 0.0};
        return {0.0, 1.0};
    }

    std::string name() const {
        switch (state_) {
        case State::true_: return "true";
        case State::false_: return "false";
        case State::dunno: return "dunno";
        }
        return {};
    }

    friend bool operator==(const Logical& a, const Logical& b) { return a.state_ == b.state_; }

private:
    State state_ = State::false_;
    std::optional<Interval> prob_;
};

inline Logical always(const Logical& l) { return Logical::of(l.is_true()); }
inline Logical sometimes(const Logical& l) { return Logical::of(!l.is_false()); }

enum class CmpOp { lt, gt, le, ge, eq, identical };

inline const char* symbol(CmpOp op) {
    switch (op) {
    case CmpOp::lt: return "<";
    case CmpOp::gt: return ">";
    case CmpOp::le: return "<=";
    case CmpOp::ge: return ">=";
    case CmpOp::eq: return "==";
    case CmpOp::identical: return "===";
    }
    return "?";
}

/// Interval comparisons. x = [a,b], y = [c,d]:
///   x <  y : true if b < c,  false if a >= d, dunno otherwise
///   x >  y : true if a > d,  false if b <= c, dunno otherwise
///   x <= y : true if b <= c, false if a > d
///   x >= y : true if a >= d, false if b < c
///   x == y : false when disjoint, true only for equal precise values, else dunno
///   x === y: true iff both endpoints coincide
inline Logical interval_compare(CmpOp op, const Interval& x, const Interval& y) {
    const double a = x.lo(), b = x.hi(), c = y.lo(), d = y.hi();
    auto tri = [](bool t, bool f) { return t ? Logical::of(true) : f ? Logical::of(false) : Logical::dunno(); };
    switch (op) {
    case CmpOp::lt: return tri(b < c, a >= d);
    case CmpOp::gt: return tri(a > d, b <= c);
    case CmpOp::le: return tri(b <= c, a > d);
    case CmpOp::ge: return tri(a >= d, b < c);
    case CmpOp::eq:
        if (b < c || d < a) return Logical::of(false);
        if (x.degenerate() && x == y) return Logical::of(true);
        return Logical::dunno();
    case CmpOp::identical: return Logical::of(a == c && b == d);
    }
    return Logical::dunno();
}

} // namespace ucc
