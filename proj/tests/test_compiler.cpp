#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ucc/compiler/compiler.hpp"
#include "ucc/runtime/evaluator.hpp"

using namespace ucc;
using namespace ucc::compiler;

namespace {

std::string slurp(const std::string& rel) {
    std::ifstream in(std::string(UCC_SOURCE_DIR) + "/" + rel);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string body(const Compiled& c) { return frontend::emit_source(c.program); }

std::string line_of(const std::string& text, const std::string& start) {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l))
        if (l.rfind(start, 0) == 0) return l;
    return "";
}

runtime::Value run_var(const ast::Program& p, const std::string& n) {
    runtime::Evaluator ev;
    ev.run(p);
    return *ev.global(n);
}

} // namespace

TEST(Substitute, LiteralBecomesConstructor) {
    const auto c = compile_text("a = 3.56\nb = a*2\n", "a: [3.555, 3.565]\n");
    EXPECT_EQ(line_of(body(c), "a ="), "a = interval(3.555, 3.565)");
    EXPECT_EQ(line_of(body(c), "b ="), "b = mul(a, 2, 'f')");
}

TEST(Substitute, ConstantsAndEmptySpec) {
    const std::string src = "pi_val = 3.14159\nr = 2.0\nx = pi_val*r\n";
    EXPECT_EQ(body(compile_text(src, "constant pi_val\n")), src);
    EXPECT_EQ(body(compile_text(src, "")), src);
    EXPECT_THROW(compile_text(src, "zz: [1, 2]\n"), UnknownVariable);
}

TEST(Substitute, SpecForms) {
    const auto c = compile_text("a = 1.0\nb = 2.0\nc = 3.0\nd = 4.0\ne = 5.0\nf = 6.0\n",
                                "a: 5 +- 2\nb: about 7.2\nc: normal([0, 1], 2)\nd: 3 out of 10\ne: at least 4\nf: [-1.5, -0.5]\n");
    const std::string t = body(c);
    EXPECT_EQ(line_of(t, "a ="), "a = interval(3, 7)");
    EXPECT_EQ(line_of(t, "b ="), "b = interval(7.0, 7.4)");
    EXPECT_EQ(line_of(t, "c ="), "c = normal(interval(0, 1), 2)");
    EXPECT_EQ(line_of(t, "d ="), "d = kn(3, 10)");
    EXPECT_EQ(line_of(t, "e ="), "e = interval(4, inf)");
    EXPECT_EQ(line_of(t, "f ="), "f = interval(-1.5, -0.5)");
    runtime::Evaluator ev;
    ev.run(frontend::parse_program(t));
    EXPECT_EQ(ev.global("e")->interval().hi(), std::numeric_limits<double>::infinity());
}

TEST(Substitute, CopyPolicies) {
    const std::string src = "a = 1.0\nc = a\nd = a - c\n";
    EXPECT_EQ(line_of(body(compile_text(src, "a: [0, 1]\n")), "d ="), "d = sub(a, c, 'e')");
    EXPECT_EQ(run_var(compile_text(src, "a: [0, 1]\n").program, "d").scalar(), 0.0);
    const auto p = compile_text(src, "a: [0, 1]\ncopy c: perfect\n");
    EXPECT_EQ(line_of(body(p), "c ="), "c = copy(a)");
    EXPECT_EQ(line_of(body(p), "d ="), "d = sub(a, c, 'p')");
    const auto f = compile_text(src, "a: [0, 1]\ncopy c: copy\n");
    EXPECT_EQ(line_of(body(f), "d ="), "d = sub(a, c, 'f')");
    EXPECT_EQ(run_var(f.program, "d").interval(), Interval(-1, 1));
}

TEST(Operators, TanSumNaiveEncoding) {
    CompileOptions opt;
    opt.rewrites = false;
    const auto c = compile(frontend::parse_program(slurp("corpus/tan_sum.ms")), spec::parse_spec(slurp("corpus/specs/tan_sum.spec")), opt);
    EXPECT_EQ(line_of(body(c), "d ="), "d = div(c, sub(1, mul(a, b, 'f'), 'f'), 'f')");
    EXPECT_EQ(line_of(body(c), "c ="), "c = add(a, b, 'f')");
}

TEST(Operators, DependenceCodes) {
    const std::string src = "x1 = 1.0\nx2 = 1.0\nx3 = 1.0\ns = x1 + x2\nt = s*x3\nu = s*x1\nv = x1 - x2\nk = 2*3\n";
    const auto c = compile_text(src, "x1: [0, 1]\nx2: [0, 1]\nx3: [0, 1]\ndependence x1, x2: independent\n"
                                     "dependence x1, x3: independent\ndependence x2, x3: i\n");
    const std::string t = body(c);
    EXPECT_EQ(line_of(t, "s ="), "s = add(x1, x2, 'i')");
    EXPECT_EQ(line_of(t, "t ="), "t = mul(s, x3, 'i')");
    EXPECT_EQ(line_of(t, "u ="), "u = mul(s, x1, 'f')");
    EXPECT_EQ(line_of(t, "k ="), "k = 2*3");
    const auto o = compile_text("a = 1.0\nb = 1.0\nc = a*b\nd = a + b\n", "a: [1, 2]\nb: [3, 4]\ndependence a, b: opposite\n");
    EXPECT_EQ(line_of(body(o), "c ="), "c = mul(a, b, 'o')");
    const auto r = compile_text("a = 1.0\nb = 1.0\nc = a*b\n", "a: uniform(0, 1)\nb: uniform(0, 1)\ndependence a, b: 0.5\n");
    EXPECT_EQ(line_of(body(r), "c ="), "c = mul(a, b, '0.5')");
}

TEST(Operators, ConditionsFollowPolicy) {
    const std::string src = "a = 1.0\nb = 2.0\nif a < b:\n    print(a)\n";
    EXPECT_EQ(line_of(body(compile_text(src, "a: [0, 3]\n")), "if"), "if always(lt(a, b, 'f')):");
    CompileOptions opt;
    opt.dunno = spec::DunnoPolicy::sometimes;
    EXPECT_EQ(line_of(body(compile(frontend::parse_program(src), spec::parse_spec("a: [0, 3]\n"), opt)), "if"),
              "if sometimes(lt(a, b, 'f')):");
    opt.dunno = spec::DunnoPolicy::error;
    EXPECT_EQ(line_of(body(compile(frontend::parse_program(src), spec::parse_spec("a: [0, 3]\n"), opt)), "if"),
              "if lt(a, b, 'f'):");
    EXPECT_EQ(line_of(body(compile_text(src, "a: [0, 3]\npolicy 3: sometimes\n")), "if"), "if sometimes(lt(a, b, 'f')):");
    EXPECT_EQ(line_of(body(compile_text(src, "")), "if"), "if a < b:");
}

TEST(Operators, AnnotationTotality) {
    for (const char* prog : {"alias_sum", "velocity", "tan_sum", "uniform_sum", "oscillator_single", "oscillator_split"}) {
        const std::string spec_file = std::string(prog).rfind("oscillator", 0) == 0 ? "oscillator" : prog == std::string("uniform_sum") ? "uniform_sum_vacuous" : prog;
        const auto c = compile(frontend::parse_program(slurp(std::string("corpus/") + prog + ".ms")),
                               spec::parse_spec(slurp("corpus/specs/" + spec_file + ".spec")));
        runtime::Evaluator ev;
        ev.run(c.program);
        EXPECT_EQ(ev.raw_uncertain_ops, 0) << prog;
    }
}

TEST(Auto, SignificantFigures) {
    const auto c = compile(frontend::parse_program("a = 3.56\nn = 7\nx = pi*a\ny = 0.5*a*n**2\nz = -2.50\nw = 1e-3\n"), {},
                           CompileOptions{true, true, spec::DunnoPolicy::always});
    const std::string t = body(c);
    EXPECT_EQ(line_of(t, "a ="), "a = interval(3.555, 3.565)");
    EXPECT_EQ(line_of(t, "n ="), "n = 7");
    EXPECT_EQ(line_of(t, "x ="), "x = mul(pi, a, 'f')");
    EXPECT_EQ(line_of(t, "y ="), "y = mul(mul(interval(0.45, 0.55), a, 'f'), n**2, 'f')");
    EXPECT_EQ(line_of(t, "z ="), "z = -interval(2.495, 2.505)");
    EXPECT_EQ(line_of(t, "w ="), "w = interval(0.0005, 0.0015)");
    bool flagged = false;
    for (const auto& n : c.notes) flagged = flagged || n.find("0.5 inside a formula") != std::string::npos;
    EXPECT_TRUE(flagged);
    const auto sites = auto_sites(frontend::parse_program("a = 3.56\nb = [1.5, 2]\n"));
    ASSERT_EQ(sites.size(), 2u);
    EXPECT_EQ(sites[0].lo.to_string(), "3.555");
    EXPECT_EQ(sites[1].hi.to_string(), "1.55");
}

TEST(Auto, ConstantsUntouched) {
    spec::SpecFile sf = spec::parse_spec("constant g\n");
    const auto c = compile(frontend::parse_program("g = 9.81\nh = 2.0*g\n"), sf, CompileOptions{true, true, spec::DunnoPolicy::always});
    EXPECT_EQ(line_of(body(c), "g ="), "g = 9.81");
}

TEST(Repeats, Examples) {
    auto report = [](const std::string& src, const std::string& sp) { return compile_text(src, sp, {false, false}).repeats; };
    const auto r1 = report("a = 1.0\nb = 1.0\nc = 1.0\nd = a*b + a*c\n", "a: [1, 2]\nb: [-1, 1]\nc: [3, 4]\n");
    ASSERT_EQ(r1.entries.size(), 1u);
    EXPECT_EQ(r1.entries[0].repeated, (std::vector<std::pair<std::string, int>>{{"a", 2}}));
    EXPECT_FALSE(r1.entries[0].across_lines);
    const auto r2 = report(slurp("corpus/tan_sum.ms"), slurp("corpus/specs/tan_sum.spec"));
    ASSERT_EQ(r2.entries.size(), 1u);
    EXPECT_EQ(r2.entries[0].line, 4);
    EXPECT_EQ(r2.entries[0].repeated, (std::vector<std::pair<std::string, int>>{{"a", 2}, {"b", 2}}));
    EXPECT_TRUE(r2.entries[0].across_lines);
    EXPECT_TRUE(report("a = 1.0\nb = 1.0\nc = 1.0\nd = a*(b + c)\n", "a: [1, 2]\nb: [-1, 1]\nc: [3, 4]\n").entries.empty());
    const auto r3 = report("a = 1.0\nfor i in range(3):\n    a = a + 1\nb = a*a\n", "a: [0, 1]\n");
    ASSERT_EQ(r3.entries.size(), 1u);
    EXPECT_EQ(r3.entries[0].target, "b");
}

TEST(Rewrite, Distributive) {
    const std::string src = "a = 1.0\nb = 1.0\nc = 1.0\nd = a*b + a*c\n";
    const std::string sp = "a: [1, 2]\nb: [-1, 1]\nc: [3, 4]\n";
    const auto naive = compile_text(src, sp, {false, false});
    const auto tight = compile_text(src, sp);
    EXPECT_EQ(line_of(body(tight), "d ="), "d = mul(a, add(b, c, 'f'), 'f')");
    EXPECT_EQ(run_var(naive.program, "d").interval(), Interval(1, 10));
    EXPECT_EQ(run_var(tight.program, "d").interval(), Interval(2, 10));
}

TEST(Rewrite, TanSum) {
    const auto c = compile(frontend::parse_program(slurp("corpus/tan_sum.ms")), spec::parse_spec(slurp("corpus/specs/tan_sum.spec")));
    EXPECT_EQ(line_of(body(c), "d ="), "d = tan(add(arctan(a), arctan(b), 'f'))");
    // the guard needs a*b < 1 to be provable
    const auto no = compile_text(slurp("corpus/tan_sum.ms"), "a: [0.5, 1.5]\nb: [0.5, 1.5]\n");
    EXPECT_EQ(line_of(body(no), "d ="), "d = div(c, sub(1, mul(a, b, 'f'), 'f'), 'f')");
}

TEST(Rewrite, CompleteSquareGuard) {
    const std::string src = "u = -3.0\nt = 2.0\ng = 9.8\ns = u*t + 0.5*g*t**2\n";
    const auto only_t = compile_text(src, "t: [1, 2]\n");
    EXPECT_NE(line_of(body(only_t), "s =").find("sqrt"), std::string::npos);
    EXPECT_EQ(line_of(body(only_t), "s =").find("intersect"), std::string::npos);
    const auto with_a = compile_text(src, "t: [1, 2]\ng: [9, 10]\n");
    EXPECT_EQ(line_of(body(with_a), "s =").rfind("s = intersect(", 0), 0u);
    const auto neg = compile_text("u = 3.0\nt = 2.0\ng = -9.8\ns = u*t + 0.5*g*t**2\n", "t: [1, 2]\n");
    EXPECT_EQ(line_of(body(neg), "s =").find("sqrt"), std::string::npos);
    const auto ts = run_var(only_t.program, "s"), naive = run_var(compile_text(src, "t: [1, 2]\n", {false, false}).program, "s");
    EXPECT_TRUE(naive.interval().contains(ts.interval()));
    EXPECT_LT(ts.interval().width(), naive.interval().width());
}

TEST(Rewrite, RulesAgreeOnScalars) {
    std::mt19937_64 g(99);
    std::uniform_real_distribution<double> u(-5, 5), pos(0.1, 10), unit(-0.99, 0.99);
    for (const auto& rule : rewrite_directory()) {
        for (int k = 0; k < 10000; ++k) {
            const bool tan_rule = rule.name == "tan-sum";
            const double x = tan_rule ? unit(g) : u(g), y = tan_rule ? unit(g) : u(g), z = u(g);
            const double a = pos(g);
            runtime::Evaluator ev;
            auto bind = [&](const ast::Expr& e) {
                std::string s = frontend::emit_expression(e);
                for (auto [m, v] : {std::pair{"?x", x}, {"?y", y}, {"?z", z}, {"?u", z}, {"?t", x}, {"?a", a}}) {
                    const std::string val = "(" + runtime::format_number(v) + ")";
                    for (std::size_t pos = s.find(m); pos != std::string::npos; pos = s.find(m)) s.replace(pos, 2, val);
                }
                return ev.evaluate(frontend::parse_expression(s)).scalar();
            };
            const double lhs = bind(rule.pattern), rhs = bind(rule.replacement);
            ASSERT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs))) << rule.name;
        }
    }
}

TEST(Rewrite, RewrittenIsTighter) {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> u(-0.99, 0.99);
    for (int k = 0; k < 100; ++k) {
        double a0 = u(g), a1 = u(g), b0 = u(g), b1 = u(g);
        if (a0 > a1) std::swap(a0, a1);
        if (b0 > b1) std::swap(b0, b1);
        const std::string sp = "a: [" + runtime::format_number(a0) + ", " + runtime::format_number(a1) + "]\nb: [" +
                               runtime::format_number(b0) + ", " + runtime::format_number(b1) + "]\n";
        const auto three = compile_text(slurp("corpus/tan_sum.ms"), sp);
        ASSERT_NE(body(three).find("tan("), std::string::npos);
        const Interval d3 = run_var(three.program, "d").as_interval();
        try {
            const Interval d2 = run_var(compile_text(slurp("corpus/tan_sum.ms"), sp, {false, false}).program, "d").as_interval();
            const double slack = 1e-12 * std::max(1.0, std::max(std::abs(d2.lo()), std::abs(d2.hi())));
            EXPECT_GE(d3.lo(), d2.lo() - slack);
            EXPECT_LE(d3.hi(), d2.hi() + slack);
        } catch (const DivisionByUncertainZero&) {
        }
    }
}

TEST(Emit, AliasSumShape) {
    const auto c = compile(frontend::parse_program(slurp("corpus/alias_sum.ms")), spec::parse_spec(slurp("corpus/specs/alias_sum.spec")), {false, false});
    EXPECT_EQ(body(c), "a = interval(3.555, 3.565)\nb = interval(7.0, 7.4)\nc = a\nd = add(mul(a, b, 'f'), c, 'f')\n");
    EXPECT_EQ(frontend::emit_source(frontend::parse_program(body(c))), body(c));
    EXPECT_EQ(body(compile_text("", "")), "");
}

TEST(Emit, EnsembleHeader) {
    const auto c = compile_text("a = 1.0\n", "a: [0, 2] ensemble \"bolts from batch 7\"\n");
    EXPECT_EQ(c.source(), "# ensemble a: bolts from batch 7\na = interval(0, 2)\n");
}
