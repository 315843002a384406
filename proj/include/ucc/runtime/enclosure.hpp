#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ucc/runtime/value.hpp"

namespace ucc::runtime {

struct EnclosureReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst = 0.0; // largest distance outside the bounds (CDF units for p-boxes)
    std::string detail;

    bool ok() const { return violations == 0; }
};

/// Checks Monte Carlo samples against an intrusive result. Intervals and
/// numbers must contain every sample; for p-boxes the empirical CDF has to
/// stay inside the bounds up to one level plus a DKW band.
inline EnclosureReport compare_enclosure(const Value& intrusive, std::vector<double> samples, double alpha = 1e-6) {
    EnclosureReport r;
    r.checked = samples.size();
    if (samples.empty()) return r;
    auto miss = [&](double by, double x) {
        if (r.violations++ == 0) r.detail = "first violation at " + std::to_string(x);
        r.worst = std::max(r.worst, by);
    };
    if (intrusive.is_scalar() || intrusive.is_interval()) {
        const Interval b = intrusive.as_interval();
        for (double x : samples) {
            if (std::isnan(x)) miss(std::numeric_limits<double>::infinity(), x);
            else if (x < b.lo()) miss(b.lo() - x, x);
            else if (x > b.hi()) miss(x - b.hi(), x);
        }
        return r;
    }
    if (!intrusive.is_pbox()) {
        r.violations = samples.size();
        r.detail = std::string("cannot compare samples with a ") + intrusive.kind_name();
        return r;
    }
    const PBox& p = intrusive.pbox();
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    const double slack = 1.0 / static_cast<double>(p.steps()) + std::sqrt(std::log(2.0 / alpha) / (2.0 * n));
    for (std::size_t i = 0; i < samples.size();) {
        const double x = samples[i];
        std::size_t j = i;
        while (j < samples.size() && samples[j] == x) ++j;
        const double below = static_cast<double>(i) / n, upto = static_cast<double>(j) / n;
        const double lo = p.cdf(x).lo(), hi = p.cdf_strict(x).hi();
        if (upto < lo - slack) miss(lo - upto, x);
        if (below > hi + slack) miss(below - hi, x);
        i = j;
    }
    return r;
}

inline std::string to_string(const EnclosureReport& r) {
    std::string out = std::to_string(r.checked) + " samples, " + std::to_string(r.violations) + " outside the bounds";
    if (r.violations) out += " (" + r.detail + ", worst excess " + std::to_string(r.worst) + ")";
    return out;
}

} // namespace ucc::runtime
