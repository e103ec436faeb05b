#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace commitlearn;

namespace {

const Rational delta = Q(1, 100);

Polytope counterexample_region_0() { return true_regions(counterexample_game())[0]; }

}  // namespace

TEST(InteriorAnchor, Examples) {
  EXPECT_EQ(interior_anchor(Polytope::simplex(3), 3), S({{1, 3}, {1, 3}, {1, 3}}));
  EXPECT_EQ(interior_anchor(Polytope::simplex_facet(3, 0), 2), S({{0, 1}, {1, 2}, {1, 2}}));
  const Polytope region = counterexample_region_0();
  const auto picked = independent_vertices(region.vertices(), 3);
  EXPECT_EQ(std::set<Point>(picked.begin(), picked.end()),
            (std::set<Point>{ints({0, 1, 0}), P({{1, 2}, {1, 2}, {0, 1}}), P({{0, 1}, {1, 2}, {1, 2}})}));
  const MixedStrategy a = interior_anchor(region, 3);
  EXPECT_EQ(a, S({{1, 6}, {2, 3}, {1, 6}}));
  for (const auto& h : region.constraints()) EXPECT_TRUE(h.strictly_contains(a.span()));
}

TEST(InteriorAnchor, NotEnoughVertices) {
  const Polytope flat = Polytope::simplex(3).intersect(Halfspace::at_least(ints({1, -1, 0}), Q(0)))
                            .intersect(Halfspace::at_least(ints({-1, 1, 0}), Q(0)));
  EXPECT_THROW(interior_anchor(flat, 3), insufficient_vertices);
}

TEST(SampleInt, ZeroOffsetReturnsAnchor) {
  const SamplerParams sp = sampler_params(Polytope::simplex(3), Polytope::simplex(3).vertices(), delta);
  EXPECT_EQ(sp.resolution, 174);
  EXPECT_EQ(embed(sp, std::vector<BigInt>{0, 0}), P({{1, 3}, {1, 3}, {1, 3}}));
}

TEST(SampleInt, FacetAssignment) {
  const Polytope f = Polytope::simplex_facet(3, 0);
  const SamplerParams sp = sampler_params(f, f.vertices(), delta);
  ASSERT_EQ(sp.d, 2u);
  for (long k : {-5L, 0L, 17L}) {
    const Rational shift = sp.spread * Q(k) / Rational(sp.resolution);
    EXPECT_EQ(embed(sp, std::vector<BigInt>{k}), (Point{Q(0), Q(1, 2) + shift, Q(1, 2) - shift}));
  }
}

TEST(SampleInt, SpreadIsLargestPowerOfTwoKeepingTheGridInside) {
  const SamplerParams sp = sampler_params(Polytope::simplex(3), Polytope::simplex(3).vertices(), delta);
  // slack 1/3 at the centroid; the last coordinate moves by up to 2 spread
  EXPECT_EQ(sp.spread, Q(1, 8));
}

TEST(SampleInt, Deterministic) {
  const Polytope region = counterexample_region_0();
  Rng a(9), b(9);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(sample_int(region, delta, a), sample_int(region, delta, b));
}

TEST(SampleInt, AvoidsAFixedPlane) {
  Rng rng(2);
  std::size_t hits = 0;
  const Hyperplane h(ints({1, -1, 0}), Q(0));
  for (int i = 0; i < 10000; ++i) hits += h.contains(sample_int(Polytope::simplex(3), delta, rng).span());
  EXPECT_LE(hits, 200u);
}

TEST(SampleIntProperty, StrictInteriorityAndBitsAcrossRandomPolytopes) {
  Rng rng(4);
  std::size_t draws = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const GameInstance g = generate_random(2 + seed % 3, 2 + seed % 3, 8, 500 + seed);
    const std::size_t m = g.leader_actions();
    const std::size_t limit = bounds::sample_bits(m, g.payoff_bits(), delta);
    for (const auto& region : true_regions(g)) {
      if (!region.is_full_dimensional()) continue;
      for (int i = 0; i < 170; ++i, ++draws) {
        const MixedStrategy p = sample_int(region, delta, rng);
        for (const auto& c : region.constraints()) ASSERT_TRUE(c.strictly_contains(p.span()));
        ASSERT_LE(bit_complexity(p.span()).value, limit);
      }
    }
  }
  EXPECT_GE(draws, 10000u);
}

TEST(SampleIntProperty, FacetDrawsStayOnTheFacetInterior) {
  Rng rng(6);
  for (std::size_t i = 0; i < 4; ++i) {
    const Polytope f = Polytope::simplex_facet(4, i);
    for (int t = 0; t < 300; ++t) {
      const MixedStrategy p = sample_int(f, delta, rng);
      ASSERT_TRUE(p[i].is_zero());
      for (std::size_t k = 0; k < 4; ++k) {
        if (k != i) {
          ASSERT_GT(p[k], Q(0));
        }
      }
    }
  }
}

TEST(SampleIntWorstCase, StaysInsideWithinTheBitBound) {
  const GameInstance g = counterexample_game();
  const Polytope region = counterexample_region_0();
  const SamplerOptions opts{Precision::worst_case, g.payoff_bits()};
  const std::size_t limit = bounds::sample_bits(3, g.payoff_bits(), delta);
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const MixedStrategy p = sample_int(region, delta, rng, opts);
    for (const auto& c : region.constraints()) ASSERT_TRUE(c.strictly_contains(p.span()));
    ASSERT_LE(bit_complexity(p.span()).value, limit);
  }
}

TEST(Bounds, SampleBitsAndResolution) {
  EXPECT_EQ(bounds::log2_inverse_ceil(Q(1, 100)), 7u);
  EXPECT_EQ(bounds::log2_inverse_ceil(Q(1, 128)), 7u);
  EXPECT_EQ(bounds::sample_bits(3, 2, Q(1, 100)), 40u * 27 * 2 + 14);
  EXPECT_EQ(bounds::grid_resolution(4, Q(1, 10)), 20);
  EXPECT_EQ(bounds::power_of_two_below(Q(1, 3)), Q(1, 4));
  EXPECT_EQ(bounds::power_of_two_below(Q(1, 4)), Q(1, 8));
  EXPECT_EQ(bounds::failure_delta(Q(1, 10), 3, 3), Q(1, 10) / Q(2 * 18 * 18 + 27));
}
