#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "ucc/dist/distributions.hpp"
#include "ucc/frontend/assignments.hpp"
#include "ucc/frontend/parser.hpp"
#include "ucc/runtime/evaluator.hpp"
#include "ucc/spec/spec.hpp"

namespace ucc::runtime {

struct UniformSampler {
    Interval range;
};
struct DistSampler {
    dist::DistSpec spec;
};
using Sampler = std::variant<UniformSampler, DistSampler>;

/// One uncertain input: every listed node reads the same draw in a trial.
struct McInput {
    std::string name;
    std::vector<const ast::Expr*> sites;
    Sampler sampler;
    int group = -1;       // inputs sharing a group share their uniform draw
    bool flipped = false; // uses 1 - u within its group
};

struct McConfig {
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::vector<McInput> inputs;
    std::string event;  // expression evaluated in the final environment
    std::string target; // variable summarised by mean and histogram; default the last one assigned
    bool keep_samples = false;
    unsigned threads = 0; // 0: hardware concurrency
    Options options;
};

struct HistogramBin {
    double lo, hi;
    std::size_t count;
};

struct McResult {
    std::size_t trials = 0;
    std::size_t event_count = 0;
    std::size_t event_dunno = 0;
    std::string target;
    double mean = 0.0;
    std::vector<HistogramBin> histogram;
    std::vector<std::string> warnings;
    std::vector<double> target_samples;
    std::map<std::string, std::vector<double>> samples; // per scalar global, when kept

    double frequency() const { return trials ? static_cast<double>(event_count) / static_cast<double>(trials) : 0.0; }
    double standard_error() const {
        const double p = frequency();
        return trials ? std::sqrt(p * (1 - p) / static_cast<double>(trials)) : 0.0;
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) { return splitmix64(splitmix64(master) ^ trial); }

// uniform on (0, 1), never exactly 0 or 1
inline double open_unit(std::mt19937_64& g) { return (static_cast<double>(g() >> 11) + 0.5) * 0x1p-53; }

inline double draw(const Sampler& s, double u, std::mt19937_64& g) {
    if (const auto* us = std::get_if<UniformSampler>(&s)) {
        const double v = us->range.lo() + u * (us->range.hi() - us->range.lo());
        return std::clamp(v, us->range.lo(), us->range.hi());
    }
    const auto& d = std::get<DistSampler>(s).spec;
    double a = d.params[0].lo(), b = d.params[1].lo();
    if (!d.precise()) {
        a = d.params[0].lo() + open_unit(g) * d.params[0].width();
        b = d.params[1].lo() + open_unit(g) * d.params[1].width();
        if (d.family == dist::Family::uniform && a > b) std::swap(a, b);
    }
    return dist::quantile(d.family, a, b, u);
}

inline std::string describe(const McInput& in) {
    if (const auto* us = std::get_if<UniformSampler>(&in.sampler))
        return in.name + " ~ uniform over [" + format_number(us->range.lo()) + ", " + format_number(us->range.hi()) + "]";
    const auto& d = std::get<DistSampler>(in.sampler).spec;
    std::string s = in.name + " ~ " + dist::name(d.family) + "(";
    for (std::size_t i = 0; i < d.params.size(); ++i) {
        const Interval& p = d.params[i];
        s += (i ? ", " : "") + (p.degenerate() ? format_number(p.lo()) : "[" + format_number(p.lo()) + ", " + format_number(p.hi()) + "]");
    }
    return s + ")";
}

/// Fixed-width histogram over the observed range.
inline std::vector<HistogramBin> histogram(const std::vector<double>& xs, std::size_t bins = 100) {
    std::vector<HistogramBin> out;
    if (xs.empty()) return out;
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *mn, hi = *mx;
    const double w = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
    for (std::size_t i = 0; i < bins; ++i)
        out.push_back({lo + w * static_cast<double>(i), i + 1 == bins ? std::max(hi, lo + w * static_cast<double>(bins)) : lo + w * static_cast<double>(i + 1), 0});
    for (double x : xs) {
        auto k = static_cast<std::size_t>((x - lo) / w);
        ++out[std::min(k, bins - 1)].count;
    }
    return out;
}

inline std::string histogram_csv(const std::vector<HistogramBin>& h) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (const auto& b : h) out += format_number(b.lo) + "," + format_number(b.hi) + "," + std::to_string(b.count) + "\n";
    return out;
}

/// Samplers for the spec entries that name assignments in `program`.
/// Distributions are sampled exactly; everything interval-like uniformly.
inline std::vector<McInput> inputs_from_spec(const ast::Program& program, const spec::SpecFile& sf) {
    std::vector<McInput> out;
    const auto sites = frontend::find_assignments(program);
    for (const auto& e : sf.entries) {
        McInput in;
        in.name = e.name;
        for (const auto& s : sites)
            if (s.name == e.name) in.sites.push_back(s.expr);
        if (in.sites.empty()) continue;
        using K = spec::UncertainExpr::Kind;
        switch (e.expr.kind) {
        case K::distribution: in.sampler = DistSampler{spec::dist_spec(e.expr)}; break;
        case K::out_of:
            throw MissingSampler("no sampler for the c-box of '" + e.name + "'");
        default: {
            const auto b = spec::interval_bounds(e.expr);
            if (!b || !std::isfinite(b->value.lo()) || !std::isfinite(b->value.hi()))
                throw MissingSampler("no sampler for the unbounded input '" + e.name + "'");
            in.sampler = UniformSampler{b->value};
        }
        }
        out.push_back(std::move(in));
    }

    // perfect and opposite pairs share one uniform draw
    std::vector<int> parent(out.size());
    std::vector<bool> parity(out.size(), false);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        bool flip = false;
        while (parent[i] != i) {
            flip = flip != parity[i];
            i = parent[i];
        }
        return std::pair{i, flip};
    };
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            const DepKind d = sf.dependence.get(out[i].name, out[j].name);
            if (d.tag() != DepKind::Tag::perfect && d.tag() != DepKind::Tag::opposite && d.tag() != DepKind::Tag::equal) continue;
            const auto [ri, fi] = find(static_cast<int>(i));
            const auto [rj, fj] = find(static_cast<int>(j));
            const bool want = d.tag() == DepKind::Tag::opposite;
            if (ri == rj) {
                if ((fi != fj) != want) throw MissingSampler("inconsistent perfect/opposite dependence around '" + out[i].name + "'");
                continue;
            }
            parent[rj] = ri;
            parity[rj] = (fi != fj) != want;
        }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto [r, f] = find(static_cast<int>(i));
        out[i].group = r;
        out[i].flipped = f;
    }
    return out;
}

/// Runs the plain program `trials` times with random inputs.
inline McResult mc_run(const ast::Program& program, const McConfig& cfg) {
    if (cfg.trials < 1) throw RuntimeError("trials must be at least 1");
    McResult res;
    res.trials = cfg.trials;
    for (const auto& in : cfg.inputs) {
        if (std::holds_alternative<UniformSampler>(in.sampler))
            res.warnings.push_back("WARNING: " + describe(in) +
                                   ": the input is only known to lie in an interval; sampling it uniformly assumes a distribution that was never stated");
        else if (!std::get<DistSampler>(in.sampler).spec.precise())
            res.warnings.push_back("WARNING: " + describe(in) + ": imprecise parameters are drawn uniformly in each trial");
    }

    std::optional<ast::Expr> event;
    if (!cfg.event.empty()) event = frontend::parse_expression(cfg.event);

    // work out the target from a first scalar run of the program
    res.target = cfg.target;
    if (res.target.empty()) {
        Evaluator probe(cfg.options);
        probe.run(program);
        for (auto it = probe.order().rbegin(); it != probe.order().rend(); ++it)
            if (probe.global(*it)->is_scalar()) {
                res.target = *it;
                break;
            }
    }

    struct Trial {
        double target = std::numeric_limits<double>::quiet_NaN();
        signed char event = 0; // 1 true, 0 false, -1 dunno
    };
    std::vector<Trial> trials(cfg.trials);
    std::vector<std::string> kept_names;
    std::vector<std::vector<double>> kept;
    if (cfg.keep_samples) {
        Evaluator probe(cfg.options);
        probe.run(program);
        for (const auto& n : probe.order())
            if (probe.global(n)->is_scalar()) kept_names.push_back(n);
        kept.assign(kept_names.size(), std::vector<double>(cfg.trials));
    }

    auto work = [&](std::size_t begin, std::size_t end) {
        Overrides ov;
        std::vector<double> u(cfg.inputs.size());
        for (std::size_t t = begin; t < end; ++t) {
            std::mt19937_64 g(trial_seed(cfg.seed, t));
            for (std::size_t i = 0; i < cfg.inputs.size(); ++i) u[i] = open_unit(g);
            ov.clear();
            for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
                const McInput& in = cfg.inputs[i];
                double ui = in.group >= 0 ? u[static_cast<std::size_t>(in.group)] : u[i];
                if (in.flipped) ui = 1.0 - ui;
                const double v = draw(in.sampler, ui, g);
                for (const ast::Expr* s : in.sites) ov[s] = v;
            }
            Evaluator ev(cfg.options);
            ev.set_overrides(&ov);
            ev.run(program);
            if (const Value* v = ev.global(res.target); v && v->is_scalar()) trials[t].target = v->scalar();
            if (event) {
                const Value r = ev.evaluate(*event);
                if (r.is_logical()) trials[t].event = r.logical().is_true() ? 1 : r.logical().is_false() ? 0 : -1;
                else if (r.is_scalar()) trials[t].event = r.scalar() != 0.0;
                else throw RuntimeError("the event must evaluate to a logical value");
            }
            for (std::size_t k = 0; k < kept_names.size(); ++k) {
                const Value* v = ev.global(kept_names[k]);
                kept[k][t] = v && v->is_scalar() ? v->scalar() : std::numeric_limits<double>::quiet_NaN();
            }
        }
    };

    unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, cfg.trials));
    if (n <= 1) {
        work(0, cfg.trials);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(n);
        const std::size_t chunk = (cfg.trials + n - 1) / n;
        for (unsigned k = 0; k < n; ++k)
            pool.emplace_back([&, k] {
                try {
                    work(std::min(cfg.trials, k * chunk), std::min(cfg.trials, (k + 1) * chunk));
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // merge in trial order
    double sum = 0.0;
    for (const Trial& t : trials) {
        if (t.event == 1) ++res.event_count;
        if (t.event == -1) ++res.event_dunno;
        if (!std::isnan(t.target)) {
            sum += t.target;
            res.target_samples.push_back(t.target);
        }
    }
    if (!res.target_samples.empty()) res.mean = sum / static_cast<double>(res.target_samples.size());
    res.histogram = histogram(res.target_samples);
    for (std::size_t k = 0; k < kept_names.size(); ++k) res.samples[kept_names[k]] = std::move(kept[k]);
    if (!cfg.keep_samples) res.target_samples.shrink_to_fit();
    return res;
}

inline std::string to_string(const McResult& r) {
    std::string out;
    for (const auto& w : r.warnings) out += w + "\n";
    out += "trials: " + std::to_string(r.trials) + "\n";
    if (r.event_count || r.event_dunno || r.trials) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "event frequency: %.6g (standard error %.2g)\n", r.frequency(), r.standard_error());
        out += buf;
    }
    if (!r.target.empty()) out += "mean of " + r.target + ": " + format_number(r.mean) + "\n";
    return out;
}

} // namespace ucc::runtime
