#include <cmath>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "relay/copt.hpp"

namespace relay {
namespace {

using testing::Rng;

ChannelGains Symmetric(double h, double g, double f) {
  ChannelGains gains;
  gains.h2 = {h, h};
  gains.g2 = {g, g};
  gains.f2 = f;
  return gains;
}

double RateDiff(const SystemParams& p, const ChannelGains& g, double p_r,
                double c, int path) {
  return FirstHopRate(p, g, {p_r, c}, path) -
         SecondHopRate(p, g, {p_r, c}, path);
}

TEST(HopIntersectionCircularity, UnitInstanceDoesNotCross) {
  const SystemParams p{1, 1, 1};
  const ChannelGains g = Symmetric(1, 1, 1);
  ASSERT_LT(RateDiff(p, g, 1.0, 0.0, 0), 0.0);
  ASSERT_LT(RateDiff(p, g, 1.0, 1.0, 0), 0.0);
  EXPECT_TRUE(HopIntersectionCircularity(p, g, 1.0, 0).empty());
}

TEST(HopIntersectionCircularity, FirstHopAboveEverywhere) {
  const SystemParams p{1, 1, 1};
  const ChannelGains g = Symmetric(50, 0.1, 0.1);
  ASSERT_GT(RateDiff(p, g, 1.0, 0.0, 1), 0.0);
  ASSERT_GT(RateDiff(p, g, 1.0, 1.0, 1), 0.0);
  EXPECT_TRUE(HopIntersectionCircularity(p, g, 1.0, 1).empty());
}

TEST(HopIntersectionCircularity, MatchesBisection) {
  Rng rng(41);
  int crossed = 0;
  for (int t = 0; t < 5000; ++t) {
    const SystemParams p = testing::RandomParams(rng);
    const ChannelGains g = testing::RandomGains(rng);
    const double p_r = rng.Uniform(1e-3, 1.0) * p.p_max;
    const int i = t % 2;
    const auto xs = HopIntersectionCircularity(p, g, p_r, i);
    ASSERT_LE(xs.size(), 1u);
    const double d0 = RateDiff(p, g, p_r, 0.0, i);
    const double d1 = RateDiff(p, g, p_r, 1.0, i);
    if (xs.empty()) {
      // No crossing in (0, 1] means the sign is preserved (up to a touch at 0).
      ASSERT_FALSE(d0 < 0 && d1 > 0) << "trial " << t;
      continue;
    }
    ++crossed;
    ASSERT_LE(std::abs(RateDiff(p, g, p_r, xs[0], i)), 1e-8);
    if (d0 < 0 && d1 > 0) {
      const double ref = testing::Bisect(
          [&](double c) { return RateDiff(p, g, p_r, c, i); }, 0.0, 1.0);
      ASSERT_NEAR(xs[0], ref, 1e-6) << "trial " << t;
    }
  }
  EXPECT_GT(crossed, 100);
}

TEST(CircularityStationaryPoint, AbsentForMonotoneSums) {
  const SystemParams p{1, 1, 1};
  // |f|^2 = 0: F decreasing in C.
  EXPECT_FALSE(
      CircularityStationaryPoint(p, Symmetric(1, 2, 0), 1.0, 0, 1, 0.0, 1.0));
  // |g|^2 = 0: F increasing in C.
  EXPECT_FALSE(
      CircularityStationaryPoint(p, Symmetric(1, 0, 10), 1.0, 0, 1, 0.0, 1.0));
}

TEST(CircularityStationaryPoint, MatchesDenseGridExtremum) {
  // Here F dips before recovering towards C = 1: the only interior
  // stationary point is a minimum, and the maximum sits at C = 0.
  const SystemParams p{1, 1, 1};
  const ChannelGains g = Symmetric(1, 2, 10);
  const auto cst = CircularityStationaryPoint(p, g, 1.0, 0, 1, 0.0, 1.0);
  ASSERT_TRUE(cst);
  const int n = 1000000;
  double lo_val = 1e300, hi_val = -1;
  double arg_min = 0, arg_max = 0;
  for (int m = 0; m <= n; ++m) {
    const double c = double(m) / n;
    const double v = MixedHopSum(p, g, {1.0, c}, 0, 1);
    if (v < lo_val) {
      lo_val = v;
      arg_min = c;
    }
    if (v > hi_val) {
      hi_val = v;
      arg_max = c;
    }
  }
  ASSERT_GT(arg_min, 0.0);
  ASSERT_LT(arg_min, 1.0);
  EXPECT_NEAR(*cst, arg_min, 1e-5);
  EXPECT_EQ(arg_max, 0.0);
}

TEST(CircularityStationaryPoint, RandomInstancesMatchGridExtremum) {
  Rng rng(47);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const SystemParams p = testing::RandomParams(rng);
    const ChannelGains g = testing::RandomGains(rng);
    const double p_r = rng.Uniform(1e-3, 1.0) * p.p_max;
    const auto cst = CircularityStationaryPoint(p, g, p_r, 0, 1, 0.0, 1.0);
    // Interior local extrema of F on a 10^5 grid.
    const int n = 100000;
    std::vector<double> ext;
    double prev = MixedHopSum(p, g, {p_r, 0.0}, 0, 1);
    double cur = MixedHopSum(p, g, {p_r, 1.0 / n}, 0, 1);
    for (int m = 2; m <= n; ++m) {
      const double next = MixedHopSum(p, g, {p_r, double(m) / n}, 0, 1);
      if ((cur < prev && cur <= next) || (cur > prev && cur >= next)) {
        ext.push_back(double(m - 1) / n);
      }
      prev = cur;
      cur = next;
    }
    // Skip extrema too flat or too close to the ends to resolve on the grid.
    if (ext.size() == 1 && ext[0] > 1e-3 && ext[0] < 1 - 1e-3) {
      ASSERT_TRUE(cst) << "trial " << t;
      ASSERT_NEAR(*cst, ext[0], 2e-5) << "trial " << t;
      ++checked;
    } else if (ext.empty()) {
      ASSERT_FALSE(cst && *cst > 1e-3 && *cst < 1 - 1e-3) << "trial " << t;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(CircularityStationaryPoint, RejectsBadInterval) {
  const SystemParams p{1, 1, 1};
  EXPECT_THROW(CircularityStationaryPoint(p, Symmetric(1, 1, 1), 1.0, 0, 1,
                                          0.6, 0.5),
               InvalidArgument);
  EXPECT_THROW(CircularityStationaryPoint(p, Symmetric(1, 1, 1), 1.0, 0, 1,
                                          0.0, 1.5),
               InvalidArgument);
}

TEST(OptimizeCircularity, NoInterferenceIsProper) {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const SystemParams p = testing::RandomParams(rng);
    ChannelGains g = testing::RandomGains(rng);
    g.f2 = 0.0;
    const double p_r = rng.Uniform(1e-3, 1.0) * p.p_max;
    EXPECT_EQ(OptimizeCircularity(p, g, p_r).c_x, 0.0);
  }
}

TEST(OptimizeCircularity, FirstHopLimitedEverywhereIsMaximallyImproper) {
  const SystemParams p{1, 1, 1};
  const ChannelGains g = Symmetric(1e-3, 1e3, 1e3);
  const CircularitySolution sol = OptimizeCircularity(p, g, 1.0);
  EXPECT_EQ(sol.candidates.case_tag, IntersectionCase::kNoIntersection);
  EXPECT_EQ(sol.c_x, 1.0);
  for (const auto& piece : sol.candidates.bottleneck) {
    EXPECT_EQ(piece.hop[0], Hop::kFirst);
    EXPECT_EQ(piece.hop[1], Hop::kFirst);
  }
}

TEST(OptimizeCircularity, DominatesGridOracle) {
  Rng rng(43);
  int cases[3] = {0, 0, 0};
  for (int t = 0; t < 1000; ++t) {
    const SystemParams p = testing::RandomParams(rng);
    const ChannelGains g = testing::RandomGains(rng);
    const double p_r = rng.Uniform(1e-3, 1.0) * p.p_max;
    const CircularitySolution sol = OptimizeCircularity(p, g, p_r);
    ++cases[static_cast<int>(sol.candidates.case_tag)];
    ASSERT_GE(sol.rates.total,
              testing::GridMaxOverCircularity(p, g, p_r, 10000) - 1e-6)
        << "trial " << t;
    ASSERT_GE(sol.rates.total, TotalRateValue(p, g, {p_r, 0.0}));
  }
  // The random ensemble exercises every case.
  EXPECT_GT(cases[0], 0);
  EXPECT_GT(cases[1], 0);
  EXPECT_GT(cases[2], 0);
}

TEST(OptimizeCircularity, CandidateInvariants) {
  Rng rng(44);
  for (int t = 0; t < 1000; ++t) {
    const SystemParams p = testing::RandomParams(rng);
    const ChannelGains g = testing::RandomGains(rng);
    const double p_r = rng.Uniform(1e-3, 1.0) * p.p_max;
    const CircularityCandidates cand = OptimizeCircularity(p, g, p_r).candidates;
    int found = 0;
    for (const auto& x : cand.intersections) {
      if (!x) continue;
      ++found;
      ASSERT_GT(*x, 0.0);
      ASSERT_LE(*x, 1.0);
    }
    ASSERT_EQ(static_cast<int>(cand.case_tag), found);
    for (double c : cand.stationaries) ASSERT_TRUE(c >= 0 && c <= 1);
    for (const auto& [c, r] : cand.evaluations) ASSERT_TRUE(c >= 0 && c <= 1);
    if (found == 2) {
      ASSERT_LE(*cand.intersections[cand.pi_order[0]],
                *cand.intersections[cand.pi_order[1]]);
    }
  }
}

TEST(OptimizeCircularity, BottleneckTagsStableOnEachPiece) {
  Rng rng(45);
  for (int t = 0; t < 500; ++t) {
    const SystemParams p = testing::RandomParams(rng);
    const ChannelGains g = testing::RandomGains(rng);
    const double p_r = rng.Uniform(1e-3, 1.0) * p.p_max;
    const auto cand = OptimizeCircularity(p, g, p_r).candidates;
    ASSERT_FALSE(cand.bottleneck.empty());
    for (const auto& piece : cand.bottleneck) {
      const double w = piece.hi - piece.lo;
      for (int k = 0; k < 32; ++k) {
        // Interior points, away from the crossings by a relative margin.
        const double c = piece.lo + w * (0.01 + 0.98 * k / 31.0);
        for (int i = 0; i < 2; ++i) {
          const double d = RateDiff(p, g, p_r, c, i);
          if (std::abs(d) < 1e-12) continue;
          ASSERT_EQ(Bottleneck(p, g, {p_r, c}, i), piece.hop[i])
              << "trial " << t << " c " << c;
        }
      }
    }
  }
}

TEST(OptimizeCircularity, TwoCrossingsPiecewiseMonotone) {
  Rng rng(46);
  int seen = 0;
  for (int t = 0; t < 3000 && seen < 100; ++t) {
    const SystemParams p = testing::RandomParams(rng);
    const ChannelGains g = testing::RandomGains(rng);
    const double p_r = rng.Uniform(1e-3, 1.0) * p.p_max;
    const auto cand = OptimizeCircularity(p, g, p_r).candidates;
    if (cand.case_tag != IntersectionCase::kTwoIntersections) continue;
    ++seen;
    const double lo = *cand.intersections[cand.pi_order[0]];
    const double hi = *cand.intersections[cand.pi_order[1]];
    double prev = -1.0;
    for (int k = 0; k <= 100; ++k) {
      const double r = TotalRateValue(p, g, {p_r, lo * k / 100});
      ASSERT_GE(r, prev - 1e-12);
      prev = r;
    }
    prev = 1e300;
    for (int k = 0; k <= 100; ++k) {
      const double r = TotalRateValue(p, g, {p_r, hi + (1 - hi) * k / 100});
      ASSERT_LE(r, prev + 1e-12);
      prev = r;
    }
  }
  EXPECT_GT(seen, 10);
}

TEST(OptimizeCircularity, RejectsPowerOutsideBudget) {
  EXPECT_THROW(OptimizeCircularity({1, 1, 1}, Symmetric(1, 1, 1), 2.0),
               InvalidArgument);
  EXPECT_THROW(OptimizeCircularity({1, 1, 1}, Symmetric(1, 1, 1), 0.0),
               InvalidArgument);
}

}  // namespace
}  // namespace relay
