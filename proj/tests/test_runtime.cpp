#include <gtest/gtest.h>

#include <cmath>

#include "ucc/frontend/parser.hpp"
#include "ucc/runtime/enclosure.hpp"
#include "ucc/runtime/evaluator.hpp"
#include "ucc/runtime/export.hpp"
#include "ucc/runtime/montecarlo.hpp"

using namespace ucc;
using namespace ucc::runtime;

namespace {

Evaluator run(const std::string& src, Options opt = {}) {
    static std::vector<ast::Program> keep; // functions point into the tree
    keep.push_back(frontend::parse_program(src));
    Evaluator ev(opt);
    ev.run(keep.back());
    return ev;
}

const Value& var(const Evaluator& ev, const std::string& n) {
    const Value* v = ev.global(n);
    if (!v) throw std::runtime_error("missing " + n);
    return *v;
}

} // namespace

TEST(Evaluator, PlainArithmetic) {
    const auto ev = run("a = 3.56\nb = 7.2\nc = a\nd = a*b + c\ne = 2**10 - 7/2\nf = -a**2\n");
    const double a = 3.56, b = 7.2;
    EXPECT_EQ(var(ev, "d").scalar(), a * b + a);
    EXPECT_EQ(var(ev, "e").scalar(), 1024 - 3.5);
    EXPECT_EQ(var(ev, "f").scalar(), -(a * a));
    EXPECT_EQ(var(ev, "c").id(), var(ev, "a").id());
}

TEST(Evaluator, ControlFlowAndFunctions) {
    const auto ev = run("def sq(x):\n    y = x*x\n    return y\n"
                        "t = 0\nfor i in range(5):\n    t = t + sq(i)\n"
                        "xs = [1, 2, 3]\ns = 0\nfor x in xs:\n    s = s + x\n"
                        "if s > 5:\n    r = 1\nelse:\n    r = 2\n"
                        "def fact(n):\n    if n < 2:\n        return 1\n    return n*fact(n - 1)\nf = fact(10)\n");
    EXPECT_EQ(var(ev, "t").scalar(), 30);
    EXPECT_EQ(var(ev, "s").scalar(), 6);
    EXPECT_EQ(var(ev, "r").scalar(), 1);
    EXPECT_EQ(var(ev, "f").scalar(), 3628800);
    EXPECT_EQ(ev.global("y"), nullptr);
}

TEST(Evaluator, AliasSumEnclosesScalarRun) {
    const auto plain = run("a = 3.56\nb = 7.2\nc = a\nd = a*b + c\n");
    const auto ev = run("a = interval(3.555, 3.565)\nb = interval(7.0, 7.4)\nc = a\nd = add(mul(a, b, 'f'), c, 'f')\n");
    const Value& d = var(ev, "d");
    ASSERT_TRUE(d.is_interval());
    EXPECT_TRUE(d.interval().contains(var(plain, "d").scalar()));
    EXPECT_LE(d.interval().lo(), 3.555 * 7.0 + 3.555);
    EXPECT_GE(d.interval().hi(), 3.565 * 7.4 + 3.565);
    EXPECT_LT(d.interval().width(), (3.565 * 7.4 + 3.565) - (3.555 * 7.0 + 3.555) + 1e-9);
}

TEST(Evaluator, IntervalLiteralsAreExactDecimals) {
    const auto ev = run("a = interval(0.1, 0.3)\nb = interval(-0.3, -0.1)\nc = interval(2.5, 2.5)\n");
    EXPECT_LE(var(ev, "a").interval().lo(), 0.1);
    EXPECT_LT(var(ev, "a").interval().lo(), 0.1 + 0.0); // 0.1 is above one tenth
    EXPECT_GE(var(ev, "a").interval().hi(), 0.3);
    EXPECT_EQ(var(ev, "b").interval().lo(), -var(ev, "a").interval().hi());
    EXPECT_TRUE(var(ev, "c").is_scalar());
}

TEST(Evaluator, VacuousSumIsDunno) {
    Options opt;
    const auto ev = run("x1 = interval(0, 1)\nx2 = interval(0, 1)\nx3 = interval(0, 1)\nx4 = interval(0, 1)\n"
                        "x5 = interval(0, 1)\ny = add(add(add(add(x1, x2, 'f'), x3, 'f'), x4, 'f'), x5, 'f')\n"
                        "ev = ge(y, 4.5, 'f')\n",
                        opt);
    EXPECT_EQ(var(ev, "y").interval(), Interval(0, 5));
    EXPECT_TRUE(var(ev, "ev").logical().is_dunno());
}

TEST(Evaluator, DependenceCodesAndIdentity) {
    const auto ev = run("a = interval(1, 2)\nb = a\nc = copy(a)\n"
                        "s1 = sub(a, b, 'f')\ns2 = sub(a, c, 'f')\ns3 = sub(a, c, 'p')\n"
                        "m = mul(interval(2, 3), interval(4, 5), 'o')\n");
    EXPECT_EQ(var(ev, "s1").scalar(), 0.0);
    EXPECT_EQ(var(ev, "s2").interval(), Interval(-1, 1));
    EXPECT_EQ(var(ev, "s3").scalar(), 0.0);
    EXPECT_EQ(var(ev, "m").interval(), Interval(10, 12));
}

TEST(Evaluator, DunnoBranches) {
    const std::string src = "a = interval(1, 3)\nif a < 2:\n    r = 1\nelse:\n    r = 2\n";
    EXPECT_THROW(run(src), DunnoBranch);
    Options opt;
    opt.raw_dunno = RawDunno::always;
    EXPECT_EQ(var(run(src, opt), "r").scalar(), 2);
    opt.raw_dunno = RawDunno::sometimes;
    EXPECT_EQ(var(run(src, opt), "r").scalar(), 1);
    const auto ev = run("a = interval(1, 3)\nif sometimes(lt(a, 2, 'f')):\n    r = 1\nelse:\n    r = 2\n");
    EXPECT_EQ(var(ev, "r").scalar(), 1);
}

TEST(Evaluator, DistributionsAndPromotion) {
    const auto ev = run("u = uniform(0, 1)\nv = uniform(0, 1)\ns = add(u, v, 'i')\nt = add(u, interval(0, 1), 'f')\n"
                        "n = normal(interval(-1, 1), 1)\nk = kn(1, 2)\n");
    EXPECT_TRUE(var(ev, "s").pbox().mean().contains(1.0));
    EXPECT_LT(var(ev, "s").pbox().mean().width(), 0.02);
    EXPECT_EQ(var(ev, "t").kind_name(), std::string("pbox"));
    EXPECT_FALSE(var(ev, "n").pbox().precise());
    EXPECT_EQ(var(ev, "k").pbox().kind(), PBoxKind::cbox);
}

TEST(Evaluator, Errors) {
    EXPECT_THROW(run("a = b + 1\n"), RuntimeError);
    EXPECT_THROW(run("a = 1/0\n"), DivisionByUncertainZero);
    EXPECT_THROW(run("a = div(1, interval(-1, 1), 'f')\n"), Error);
    EXPECT_THROW(run("a = ln(-1)\n"), DomainError);
    EXPECT_THROW(run("def f(x):\n    return f(x)\ny = f(1)\n"), RuntimeError);
    try {
        run("a = 1\nb = zork(a)\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(Evaluator, Deterministic) {
    const std::string src = "a = normal(interval(0, 1), 2)\nb = uniform(1, 3)\nc = mul(a, b, 'f')\nd = div(c, b, 'i')\n";
    const auto x = run(src), y = run(src);
    EXPECT_EQ(export_run(x).dump(), export_run(y).dump());
}

TEST(Export, Schema) {
    const auto ev = run("a = interval(0, inf)\nb = uniform(0, 1)\nc = lt(a, b, 'f')\nprint(1.5)\n");
    const auto j = export_run(ev);
    EXPECT_EQ(j["variables"]["a"]["bounds"][1], "inf");
    EXPECT_EQ(j["variables"]["b"]["left"].size(), 200u);
    EXPECT_EQ(j["variables"]["c"]["value"], "dunno");
    EXPECT_EQ(j["output"][0], "1.5");
}

namespace {

const char* kUniformSum = "x1 = 0.5\nx2 = 0.5\nx3 = 0.5\nx4 = 0.5\nx5 = 0.5\ny = x1 + x2 + x3 + x4 + x5\n";

McConfig uniform_inputs(const ast::Program& p, std::size_t trials, std::uint64_t seed) {
    spec::SpecFile sf = spec::parse_spec("x1: uniform(0, 1)\nx2: uniform(0, 1)\nx3: uniform(0, 1)\nx4: uniform(0, 1)\nx5: uniform(0, 1)\n");
    McConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.inputs = inputs_from_spec(p, sf);
    cfg.event = "y >= 4.5";
    return cfg;
}

} // namespace

TEST(MonteCarlo, IrwinHallTail) {
    const auto p = frontend::parse_program(kUniformSum);
    const auto r = mc_run(p, uniform_inputs(p, 200000, 7));
    EXPECT_EQ(r.target, "y");
    EXPECT_NEAR(r.mean, 2.5, 0.01);
    EXPECT_NEAR(r.frequency(), 1.0 / 3840, 4 * std::sqrt(1.0 / 3840 / 200000));
}

TEST(MonteCarlo, SameSeedSameHistogram) {
    const auto p = frontend::parse_program(kUniformSum);
    auto cfg = uniform_inputs(p, 5000, 11);
    const auto a = mc_run(p, cfg);
    cfg.threads = 3;
    const auto b = mc_run(p, cfg);
    EXPECT_EQ(histogram_csv(a.histogram), histogram_csv(b.histogram));
    EXPECT_EQ(a.mean, b.mean);
    cfg.seed = 12;
    EXPECT_NE(histogram_csv(mc_run(p, cfg).histogram), histogram_csv(a.histogram));
    EXPECT_EQ(a.histogram.size(), 100u);
}

TEST(MonteCarlo, DegenerateSingleTrial) {
    const auto p = frontend::parse_program(kUniformSum);
    McConfig cfg;
    cfg.trials = 1;
    cfg.event = "y >= 2.5";
    const auto r = mc_run(p, cfg);
    EXPECT_EQ(r.event_count, 1u);
    EXPECT_EQ(r.mean, 2.5);
}

TEST(MonteCarlo, PerfectAndOppositeShareDraws) {
    const auto p = frontend::parse_program("a = 1.0\nb = 1.0\nc = 1.0\nd = a - b\ne = a + c\n");
    const auto sf = spec::parse_spec("a: [0, 1]\nb: [0, 1]\nc: [0, 1]\ndependence a, b: p\ndependence a, c: o\n");
    McConfig cfg;
    cfg.trials = 200;
    cfg.inputs = inputs_from_spec(p, sf);
    cfg.keep_samples = true;
    const auto r = mc_run(p, cfg);
    for (double d : r.samples.at("d")) EXPECT_EQ(d, 0.0);
    for (double e : r.samples.at("e")) EXPECT_NEAR(e, 1.0, 1e-15);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(MonteCarlo, MissingSampler) {
    const auto p = frontend::parse_program("a = 1.0\n");
    EXPECT_THROW(inputs_from_spec(p, spec::parse_spec("a: at least 0\n")), MissingSampler);
    EXPECT_THROW(inputs_from_spec(p, spec::parse_spec("a: 3 out of 10\n")), MissingSampler);
}

TEST(Enclosure, IntervalsAndNegativeControl) {
    const auto p = frontend::parse_program(kUniformSum);
    auto cfg = uniform_inputs(p, 20000, 3);
    cfg.keep_samples = true;
    const auto r = mc_run(p, cfg);
    const auto ev = run("x1 = interval(0, 1)\nx2 = interval(0, 1)\nx3 = interval(0, 1)\nx4 = interval(0, 1)\n"
                        "x5 = interval(0, 1)\ny = add(add(add(add(x1, x2, 'f'), x3, 'f'), x4, 'f'), x5, 'f')\n");
    EXPECT_TRUE(compare_enclosure(var(ev, "y"), r.samples.at("y")).ok());
    EXPECT_TRUE(compare_enclosure(var(ev, "x1"), r.samples.at("x1")).ok());
    const Value shrunk = Interval(0.05, 0.95); // 10% narrower
    const auto bad = compare_enclosure(shrunk, r.samples.at("x1"));
    EXPECT_GT(bad.violations, 0u);
}

TEST(Enclosure, PBoxEcdf) {
    const auto p = frontend::parse_program(kUniformSum);
    auto cfg = uniform_inputs(p, 20000, 5);
    cfg.keep_samples = true;
    const auto r = mc_run(p, cfg);
    const auto fr = run("x1 = uniform(0, 1)\nx2 = uniform(0, 1)\nx3 = uniform(0, 1)\nx4 = uniform(0, 1)\n"
                        "x5 = uniform(0, 1)\ny = add(add(add(add(x1, x2, 'f'), x3, 'f'), x4, 'f'), x5, 'f')\n");
    EXPECT_TRUE(compare_enclosure(var(fr, "y"), r.samples.at("y")).ok());
    const auto in = run("x1 = uniform(0, 1)\nx2 = uniform(0, 1)\nx3 = uniform(0, 1)\nx4 = uniform(0, 1)\n"
                        "x5 = uniform(0, 1)\ny = add(add(add(add(x1, x2, 'i'), x3, 'i'), x4, 'i'), x5, 'i')\n");
    EXPECT_TRUE(compare_enclosure(var(in, "y"), r.samples.at("y")).ok());
    // a perfectly dependent sum is much wider than the independent one
    const auto pe = run("x = uniform(0, 1)\ny = mul(x, 5, 'f')\n");
    EXPECT_FALSE(compare_enclosure(var(pe, "y"), r.samples.at("y")).ok());
}

TEST(Enclosure, DegenerateEqualsScalar) {
    const std::vector<double> xs(10, 2.5);
    EXPECT_TRUE(compare_enclosure(Value(2.5), xs).ok());
    EXPECT_FALSE(compare_enclosure(Value(2.5000001), xs).ok());
}
