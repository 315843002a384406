#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pbox_oracles.hpp"
#include "ucc/core/pbox_ops.hpp"
#include "ucc/dist/distributions.hpp"

using namespace ucc;
using dist::DistSpec;
using dist::Family;

namespace {

PBox uniform(Interval a, Interval b, std::size_t n = 200) { return dist::make_pbox({Family::uniform, {a, b}}, n); }

const DepKind kAllDeps[] = {DepKind::independent(), DepKind::perfect(), DepKind::opposite()};

} // namespace

TEST(PBoxBinop, ComonotoneSelfSumDoublesQuantiles) {
    const PBox u = uniform(1, 2);
    const PBox r = pbox_binop(BinOp::add, u, u, DepKind::perfect());
    for (std::size_t i = 0; i < r.steps(); ++i) {
        EXPECT_DOUBLE_EQ(r.left()[i], 2 * u.left()[i]);
        EXPECT_DOUBLE_EQ(r.right()[i], 2 * u.right()[i]);
    }
    EXPECT_EQ(r.kind(), PBoxKind::distribution);
}

TEST(PBoxBinop, PointMassesUnderAnyDependence) {
    for (DepKind d : {DepKind::frechet(), DepKind::independent(), DepKind::perfect(), DepKind::opposite()}) {
        const PBox r = pbox_binop(BinOp::add, PBox::point(2), PBox::point(3), d);
        EXPECT_EQ(r, PBox::point(5)) << d.name();
    }
}

TEST(PBoxBinop, FrechetEnclosesNamedDependenciesForImpreciseUniforms) {
    const PBox a = uniform({0, 1}, {2, 3});
    const PBox b = uniform({4, 6}, {5, 7});
    const PBox f = pbox_binop(BinOp::add, a, b, DepKind::frechet());
    for (DepKind d : kAllDeps) EXPECT_TRUE(f.encloses(pbox_binop(BinOp::add, a, b, d))) << d.name();
}

TEST(PBoxBinop, IndependentSumMatchesTriangularCdf) {
    const std::size_t n = 200;
    const PBox u = uniform(0, 1, n);
    const PBox r = pbox_binop(BinOp::add, u, u, DepKind::independent());
    auto tri = [](double z) { return z <= 0 ? 0.0 : z <= 1 ? z * z / 2 : z < 2 ? 1 - (2 - z) * (2 - z) / 2 : 1.0; };
    double worst = 0;
    for (int k = 0; k <= 20000; ++k) {
        const double z = 2.0 * k / 20000;
        const Interval c = r.cdf(z);
        worst = std::max({worst, std::abs(c.lo() - tri(z)), std::abs(c.hi() - tri(z))});
    }
    EXPECT_LE(worst, 2.0 / n);
}

TEST(PBoxBinop, FrechetDominanceOnRandomPairs) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        for (BinOp op : {BinOp::add, BinOp::sub, BinOp::mul, BinOp::div}) {
            const bool positive = op == BinOp::mul || op == BinOp::div;
            const PBox x = oracle::random_box(rng, 100, positive).box;
            const PBox y = oracle::random_box(rng, 100, positive).box;
            const PBox f = pbox_binop(op, x, y, DepKind::frechet());
            for (DepKind d : kAllDeps) ASSERT_TRUE(f.encloses(pbox_binop(op, x, y, d))) << symbol(op) << d.name();
        }
    }
}

TEST(PBoxBinop, EnclosesCoupledSamplesFromMemberDistributions) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const std::size_t n = 100, draws = 2000;
    const double slack = 1.0 / n + oracle::dkw(draws, 1e-6);
    std::size_t realisations = 0;
    for (BinOp op : {BinOp::add, BinOp::sub, BinOp::mul, BinOp::div}) {
        for (DepKind d : {DepKind::frechet(), DepKind::independent(), DepKind::perfect(), DepKind::opposite()}) {
            for (int trial = 0; trial < 10; ++trial) {
                const bool positive = op == BinOp::mul || op == BinOp::div;
                const auto x = oracle::random_box(rng, n, positive);
                const auto y = oracle::random_box(rng, n, positive);
                const PBox r = pbox_binop(op, x.box, y.box, d);
                const auto tx = oracle::random_theta(x.spec, rng);
                const auto ty = oracle::random_theta(y.spec, rng);
                std::vector<double> zs;
                for (std::size_t k = 0; k < draws; ++k) {
                    const double ux = u01(rng);
                    double uy = u01(rng); // Fréchet: any coupling, independent is one of them
                    if (d == DepKind::perfect()) uy = ux;
                    if (d == DepKind::opposite()) uy = 1 - ux;
                    const double a = oracle::member_quantile(x.spec, tx, std::clamp(ux, 1e-12, 1 - 1e-12));
                    const double b = oracle::member_quantile(y.spec, ty, std::clamp(uy, 1e-12, 1 - 1e-12));
                    zs.push_back(oracle::scalar(op, a, b));
                }
                realisations += zs.size();
                ASSERT_LE(oracle::ecdf_violation(r, zs), slack) << symbol(op) << " " << d.name();
            }
        }
    }
    EXPECT_GE(realisations, 10000u);
}

TEST(PBoxBinop, GaussianCopulaSitsBetweenIndependenceAndPerfect) {
    const PBox u = uniform(0, 1, 100);
    const PBox f = pbox_binop(BinOp::add, u, u, DepKind::frechet());
    const PBox r = pbox_binop(BinOp::add, u, u, DepKind::correlation(0.6));
    EXPECT_TRUE(f.encloses(r));
    EXPECT_EQ(pbox_binop(BinOp::add, u, u, DepKind::correlation(1.0)), pbox_binop(BinOp::add, u, u, DepKind::perfect()));
    // positive correlation spreads the sum more than independence does
    const PBox i = pbox_binop(BinOp::add, u, u, DepKind::independent());
    EXPECT_LT(r.left()[5], i.left()[5]);
}

TEST(PBoxBinop, SameObjectSemantics) {
    const PBox u = uniform(-1, 1, 100);
    const PBox sq = pbox_binop(BinOp::mul, u, u, DepKind::equal());
    EXPECT_GE(sq.support().lo(), 0.0);
    EXPECT_EQ(pbox_binop(BinOp::sub, u, u, DepKind::equal()), PBox::point(0.0, 100));
}

TEST(PBoxBinop, DivisionNeedsSupportAwayFromZero) {
    EXPECT_THROW(pbox_binop(BinOp::div, uniform(1, 2), uniform(-1, 1)), DivisionByUncertainZero);
}

TEST(PBoxBinop, FrechetProductStraddlingZeroFallsBackToHull) {
    std::vector<std::string> notes;
    const FnContext ctx{SqrtPolicy::clamp, &notes};
    const PBox x = uniform(-1, 1), y = uniform(2, 3);
    const PBox r = pbox_binop(BinOp::mul, x, y, DepKind::frechet(), ctx);
    const double edge = x.right().back() * y.right().back();
    EXPECT_TRUE(r.support().contains(Interval(-edge, edge)));
    EXPECT_NEAR(r.support().width(), 2 * edge, 1e-12);
    EXPECT_EQ(notes.size(), 1u);
}

TEST(PBoxFn, MonotoneLift) {
    EXPECT_EQ(pbox_fn(Fn::exp, PBox::point(0.0)), PBox::point(1.0));
    const PBox u = uniform(0, 1);
    const PBox e = pbox_fn(Fn::exp, u);
    for (std::size_t i = 0; i < u.steps(); ++i) {
        EXPECT_NEAR(e.left()[i], std::exp(u.left()[i]), 1e-15);
        EXPECT_NEAR(e.right()[i], std::exp(u.right()[i]), 1e-15);
    }
}

TEST(PBoxFn, SineOfUniformReachesOne) {
    const PBox s = pbox_fn(Fn::sin, uniform(0, std::numbers::pi));
    EXPECT_GE(s.support().lo(), -1.0);
    EXPECT_LE(s.support().hi(), 1.0);
    const PBox u = uniform(0, std::numbers::pi);
    double sampled_max = 0;
    for (double q : u.left()) sampled_max = std::max(sampled_max, std::sin(q));
    EXPECT_NEAR(s.support().hi(), sampled_max, 1e-12);
    EXPECT_GT(s.support().hi(), std::sin(std::numbers::pi * 0.4975));
}

TEST(PBoxCompare, Examples) {
    const Logical t = pbox_compare(CmpOp::lt, PBox::point(1), PBox::point(2));
    EXPECT_TRUE(t.is_true());
    EXPECT_EQ(*t.probability(), Interval(1, 1));
    const PBox u = uniform(0, 1);
    EXPECT_TRUE(pbox_compare(CmpOp::lt, u, u, DepKind::frechet()).is_dunno());
    const Logical half = pbox_compare(CmpOp::lt, u, PBox::point(0.5), DepKind::independent());
    EXPECT_TRUE(half.is_dunno());
    EXPECT_NEAR(half.probability()->lo(), 0.5, 1.0 / 200);
    EXPECT_NEAR(half.probability()->hi(), 0.5, 1.0 / 200);
}

TEST(PBoxIntersect, LevelWise) {
    const PBox a = uniform({0, 1}, {2, 3});
    const PBox b = uniform({0.5, 2}, {2.5, 4});
    const PBox c = intersect(a, b);
    for (std::size_t i = 0; i < c.steps(); ++i) {
        EXPECT_EQ(c.left()[i], std::max(a.left()[i], b.left()[i]));
        EXPECT_EQ(c.right()[i], std::min(a.right()[i], b.right()[i]));
    }
    EXPECT_THROW(intersect(PBox::point(0), PBox::point(1)), EmptyIntersection);
}

TEST(PBox, InvariantsRejected) {
    EXPECT_THROW(PBox({1, 0}, {1, 1}), InvalidParams);
    EXPECT_THROW(PBox({0, 1}, {0, 0.5}), InvalidParams);
}

TEST(PBox, VacuousReadsWholeProbabilityRange) {
    const PBox v = PBox::from_interval({0, 1});
    EXPECT_EQ(v.cdf(0.5), Interval(0, 1));
    EXPECT_EQ(PBox::from_interval({3, 3}), PBox::point(3));
    PBox sum = v;
    for (int i = 0; i < 4; ++i) sum = pbox_binop(BinOp::add, sum, v, DepKind::frechet());
    EXPECT_EQ(sum.support(), Interval(0, 5));
}
