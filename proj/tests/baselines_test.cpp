#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "artgallery/baselines.hpp"
#include "artgallery/harness.hpp"

using namespace artgallery;

namespace {

bool all_guarded(const Polygon& h, const std::vector<Point>& guards, const std::vector<Point>& q) {
  return std::all_of(q.begin(), q.end(), [&](const Point& p) {
    return std::any_of(guards.begin(), guards.end(), [&](const Point& g) { return sees(h, g, p); });
  });
}

bool is_power_of_two(const Integer& z) { return z > 0 && mpz_popcount(z.get_mpz_t()) == 1; }

}  // namespace

TEST(Greedy, CapFormula) {
  // 4 * ln(100) / (1/2) = 36.84...
  EXPECT_EQ(greedy_cap(4, ratio(1, 100), ratio(1, 2)), 37u);
  EXPECT_EQ(greedy_cap(1, ratio(1, 10), ratio(1, 2)), 5u);
}

TEST(Greedy, ConvexNeedsOneGuard) {
  const Instance in = make_convex(6);
  const GreedyResult g = greedy_solve(in.polygon, ratio(1, 100), ratio(1, 2), 1ul);
  EXPECT_EQ(g.guards.size(), 1u);
  EXPECT_EQ(verify(in.polygon, g.guards), 1);
}

TEST(Greedy, LShapeAtMostTwo) {
  const Instance in = make_lshape();
  const GreedyResult g = greedy_solve(in.polygon, ratio(1, 100), ratio(1, 2), 1ul);
  EXPECT_LE(g.guards.size(), 2u);
  EXPECT_GE(verify(in.polygon, g.guards), ratio(99, 100));
}

TEST(Greedy, CombOneGuardPerTooth) {
  const Instance in = make_comb(4);
  const Rational delta = ratio(1, 100);
  const GreedyResult g = greedy_solve(in.polygon, delta, ratio(1, 2), 4ul);
  EXPECT_EQ(g.guards.size(), 4u);
  EXPECT_LE(g.iterations, greedy_cap(4, delta, ratio(1, 2)));
  ASSERT_EQ(g.residual.size(), g.iterations + 1);
  for (std::size_t i = 1; i < g.residual.size(); ++i) EXPECT_LT(g.residual[i], g.residual[i - 1]);
  EXPECT_LT(g.residual.back(), delta * in.polygon.area());
  EXPECT_EQ(1 - verify(in.polygon, g.guards), g.residual.back() / in.polygon.area());
}

TEST(Greedy, CapExceededIsInvariantViolation) {
  EXPECT_THROW(greedy_solve(make_comb(2).polygon, ratio(1, 10), ratio(1, 2), 0ul),
               InvariantViolation);
  EXPECT_THROW(greedy_solve(make_lshape().polygon, Rational(0), ratio(1, 2)), std::invalid_argument);
}

TEST(Sample, SampleSize) {
  // 12 * 4 * ln(40) / 0.01 = 17706.6...
  EXPECT_EQ(make_sample_params(ratio(1, 10), ratio(1, 10), 0, 4).sample_size(), 17707u);
  // 12 * ln(10) / 0.25 = 110.5...
  EXPECT_EQ(make_sample_params(ratio(1, 2), ratio(1, 10), 0, 1).sample_size(), 111u);
  EXPECT_EQ(make_sample_params(ratio(1, 2), ratio(9, 10), 0, 1).sample_size(), 6u);
  EXPECT_THROW(make_sample_params(ratio(1, 2), Rational(1), 0, 1), std::invalid_argument);
  EXPECT_THROW(make_sample_params(ratio(1, 2), ratio(1, 2), 0, 0), std::invalid_argument);
}

TEST(Sample, DrawIsDeterministicInteriorAndDyadic) {
  const Polygon h = make_orthogonal(12, 1, 7).polygon;
  const auto a = draw_samples(h, 42, 300);
  const auto b = draw_samples(h, 42, 300);
  const auto c = draw_samples(h, 43, 300);
  ASSERT_EQ(a.size(), 300u);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& p : a) {
    EXPECT_EQ(locate(p, h), Location::interior);
    EXPECT_TRUE(is_power_of_two(p.x.get_den()));
    EXPECT_TRUE(is_power_of_two(p.y.get_den()));
  }
}

TEST(Sample, DrawLooksUniform) {
  // Fraction of samples in the left tooth of comb(2) against its area share.
  const Polygon h = make_comb(2).polygon;
  const auto q = draw_samples(h, 5, 4000);
  const auto in_tooth = std::count_if(q.begin(), q.end(), [](const Point& p) {
    return p.y > 1 && p.x < 1;
  });
  EXPECT_NEAR(static_cast<double>(in_tooth) / 4000.0, 2.0 / 7.0, 0.03);
}

TEST(Sample, VisibilitySetsMatchExactSees) {
  for (const Polygon& h : {make_comb(3).polygon, make_orthogonal(12, 1, 7).polygon}) {
    std::vector<Point> guards = h.vertices();
    const auto q = draw_samples(h, 3, 400);
    guards.push_back(q[0]);
    guards.push_back(q[1]);
    // Boundary points and samples at grazing positions take the exact path.
    std::vector<Point> pts = q;
    for (const auto& v : h.vertices()) pts.push_back(v);
    const auto sets = visibility_sets(h, guards, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<std::uint32_t> expect;
      for (std::uint32_t g = 0; g < guards.size(); ++g)
        if (sees(h, guards[g], pts[i])) expect.push_back(g);
      EXPECT_EQ(sets[i], expect) << to_string(pts[i]);
    }
  }
}

TEST(Hitting, DisjointSetsNeedEveryCandidate) {
  const std::vector<std::vector<std::uint32_t>> sets{{0}, {1}, {2}, {1}};
  const HittingResult r = doubling_hitting_set(sets, 3);
  EXPECT_EQ(r.chosen, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Hitting, SharedCandidateSuffices) {
  const std::vector<std::vector<std::uint32_t>> sets{{0, 3}, {1, 3}, {2, 3}};
  EXPECT_EQ(doubling_hitting_set(sets, 4).chosen, (std::vector<std::uint32_t>{3}));
  EXPECT_THROW(doubling_hitting_set({{0}, {}}, 1), std::invalid_argument);
}

TEST(Hitting, ValidAndNearOptimalOnRandomSystems) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 3 + rng() % 7, n = 5 + rng() % 20;
    std::vector<std::vector<std::uint32_t>> sets(n);
    for (auto& s : sets) {
      for (std::uint32_t c = 0; c < m; ++c)
        if (rng() % 3 == 0) s.push_back(c);
      if (s.empty()) s.push_back(static_cast<std::uint32_t>(rng() % m));
    }
    const HittingResult r = doubling_hitting_set(sets, m);
    for (const auto& s : sets)
      EXPECT_TRUE(std::any_of(s.begin(), s.end(), [&](std::uint32_t c) {
        return std::find(r.chosen.begin(), r.chosen.end(), c) != r.chosen.end();
      }));
    // Brute-force optimum over all subsets.
    std::size_t best = m;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      const bool ok = std::all_of(sets.begin(), sets.end(), [&](const auto& s) {
        return std::any_of(s.begin(), s.end(), [&](std::uint32_t c) { return (mask >> c) & 1; });
      });
      if (ok) best = std::min<std::size_t>(best, std::popcount(mask));
    }
    EXPECT_LE(r.chosen.size(), best * (1 + std::log(static_cast<double>(n))));
  }
}

TEST(Sample, ConvexOneGuard) {
  const Polygon h = make_convex(5).polygon;
  const SampleResult r = sample_solve(h, make_sample_params(ratio(1, 4), ratio(1, 10), 9, 1));
  EXPECT_EQ(r.guards.size(), 1u);
  EXPECT_TRUE(all_guarded(h, r.guards, r.samples));
  EXPECT_EQ(verify(h, r.guards), 1);
}

TEST(Sample, FixedSeedReproducible) {
  const Polygon h = make_lshape().polygon;
  const SampleParams p = make_sample_params(ratio(1, 4), ratio(1, 10), 42, 1);
  const SampleResult a = sample_solve(h, p);
  const SampleResult b = sample_solve(h, p);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.guards, b.guards);
  EXPECT_TRUE(all_guarded(h, a.guards, a.samples));
}

TEST(Sample, CombGuardsSampleAndMostArea) {
  const Polygon h = make_comb(3).polygon;
  const SampleResult r = sample_solve(h, make_sample_params(ratio(1, 4), ratio(1, 10), 1, 3));
  EXPECT_TRUE(all_guarded(h, r.guards, r.samples));
  EXPECT_GE(r.guards.size(), 3u);
  EXPECT_GE(verify(h, r.guards), ratio(3, 4));
}

TEST(Sample, SearchDoublesK) {
  const Polygon h = make_comb(3).polygon;
  const SampleResult r = sample_search(h, ratio(1, 4), ratio(1, 10), 2);
  EXPECT_GE(r.k, 2u);
  EXPECT_LE(static_cast<double>(r.guards.size()), 2.0 * r.k * std::ceil(std::log2(2.0 * r.k)));
  EXPECT_TRUE(all_guarded(h, r.guards, r.samples));
}
