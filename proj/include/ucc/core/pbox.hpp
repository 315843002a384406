#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ucc/core/interval.hpp"

namespace ucc {

enum class PBoxKind { distribution, pbox, cbox };

inline const char* name(PBoxKind k) {
    switch (k) {
    case PBoxKind::distribution: return "distribution";
    case PBoxKind::pbox: return "pbox";
    case PBoxKind::cbox: return "cbox";
    }
    return "?";
}

/// Default number of probability levels.
inline constexpr std::size_t kDefaultSteps = 200;

/// Probability box discretised at N levels p_i = (i + 0.5) / N.
///
/// `left()` holds quantiles of the upper CDF bound (the left edge of the box)
/// and `right()` quantiles of the lower CDF bound. Slice i is the focal
/// interval [left[i], right[i]] carrying mass 1/N.
class PBox {
public:
    PBox(std::vector<double> left, std::vector<double> right, PBoxKind kind = PBoxKind::pbox)
        : left_(std::move(left)), right_(std::move(right)), kind_(kind) {
        if (left_.empty() || left_.size() != right_.size())
            throw InvalidParams("p-box bound arrays must be non-empty and of equal length");
        for (std::size_t i = 0; i < left_.size(); ++i) {
            if (std::isnan(left_[i]) || std::isnan(right_[i])) throw ArithmeticError("p-box quantile is NaN");
            if (left_[i] > right_[i]) throw InvalidParams("p-box left bound lies right of right bound");
            if (i > 0 && (left_[i] < left_[i - 1] || right_[i] < right_[i - 1]))
                throw InvalidParams("p-box quantile arrays must be nondecreasing");
        }
        if (kind_ != PBoxKind::cbox) kind_ = precise() ? PBoxKind::distribution : PBoxKind::pbox;
    }

    static PBox point(double v, std::size_t steps = kDefaultSteps) {
        return {std::vector<double>(steps, v), std::vector<double>(steps, v)};
    }

    /// Vacuous p-box: everything known is the support interval.
    static PBox from_interval(const Interval& x, std::size_t steps = kDefaultSteps) {
        return {std::vector<double>(steps, x.lo()), std::vector<double>(steps, x.hi())};
    }

    std::size_t steps() const { return left_.size(); }
    const std::vector<double>& left() const { return left_; }
    const std::vector<double>& right() const { return right_; }
    PBoxKind kind() const { return kind_; }
    const std::string& ensemble() const { return ensemble_; }

    PBox with_ensemble(std::string text) const {
        PBox p = *this;
        p.ensemble_ = std::move(text);
        return p;
    }

    PBox with_kind(PBoxKind k) const {
        PBox p = *this;
        p.kind_ = (k == PBoxKind::cbox) ? k : (precise() ? PBoxKind::distribution : PBoxKind::pbox);
        return p;
    }

    static double level(std::size_t i, std::size_t steps) {
        return (static_cast<double>(i) + 0.5) / static_cast<double>(steps);
    }
    double level(std::size_t i) const { return level(i, steps()); }

    Interval focal(std::size_t i) const { return {left_[i], right_[i]}; }
    Interval support() const { return {left_.front(), right_.back()}; }
    Interval mean() const {
        double lo = 0, hi = 0;
        for (std::size_t i = 0; i < steps(); ++i) lo += left_[i], hi += right_[i];
        return {lo / static_cast<double>(steps()), hi / static_cast<double>(steps())};
    }

    /// Left and right bound agree to within one ulp at every level.
    bool precise() const {
        for (std::size_t i = 0; i < steps(); ++i)
            if (right_[i] > rounding::next_up(left_[i])) return false;
        return true;
    }

    bool is_point() const { return left_.front() == right_.back(); }

    /// Bounds on Pr(X <= x): [lower CDF, upper CDF].
    Interval cdf(double x) const {
        return {fraction(right_, [x](double v) { return v <= x; }), fraction(left_, [x](double v) { return v <= x; })};
    }

    /// Bounds on Pr(X < x).
    Interval cdf_strict(double x) const {
        return {fraction(right_, [x](double v) { return v < x; }), fraction(left_, [x](double v) { return v < x; })};
    }

    /// Quantile bounds at slice i as an interval.
    Interval quantile(std::size_t i) const { return focal(i); }

    /// The same p-box at a different resolution, widened outward.
    PBox resampled(std::size_t steps) const {
        if (steps == this->steps()) return *this;
        std::vector<double> l(steps), r(steps);
        const std::size_t n = this->steps();
        for (std::size_t k = 0; k < steps; ++k) {
            const std::size_t first = k * n / steps;
            const std::size_t last = ((k + 1) * n + steps - 1) / steps - 1;
            l[k] = left_[first];
            r[k] = right_[std::min(last, n - 1)];
        }
        PBox p(std::move(l), std::move(r), kind_);
        p.ensemble_ = ensemble_;
        return p;
    }

    bool encloses(const PBox& other, double slack = 0.0) const {
        if (other.steps() != steps()) return resampled(other.steps()).encloses(other, slack);
        for (std::size_t i = 0; i < steps(); ++i)
            if (other.left_[i] < left_[i] - slack || other.right_[i] > right_[i] + slack) return false;
        return true;
    }

    friend bool operator==(const PBox& a, const PBox& b) { return a.left_ == b.left_ && a.right_ == b.right_; }

private:
    template <typename Pred>
    static double fraction(const std::vector<double>& v, Pred pred) {
        std::size_t n = 0;
        for (double q : v) n += pred(q) ? 1 : 0;
        return static_cast<double>(n) / static_cast<double>(v.size());
    }

    std::vector<double> left_;
    std::vector<double> right_;
    PBoxKind kind_ = PBoxKind::pbox;
    std::string ensemble_;
};

inline PBox intersect(const PBox& x, const PBox& y) {
    const std::size_t n = std::max(x.steps(), y.steps());
    const PBox a = x.resampled(n), b = y.resampled(n);
    std::vector<double> l(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        l[i] = std::max(a.left()[i], b.left()[i]);
        r[i] = std::min(a.right()[i], b.right()[i]);
        if (l[i] > r[i]) throw EmptyIntersection("p-box enclosures do not overlap at level " + std::to_string(i));
    }
    return {std::move(l), std::move(r)};
}

} // namespace ucc
