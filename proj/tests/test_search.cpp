#include <gtest/gtest.h>

#include "support.hpp"

using namespace commitlearn;

TEST(SternBrocot, Examples) {
  EXPECT_EQ(stern_brocot(Q(1, 2), Q(1, 2), 3), Q(1, 2));
  EXPECT_EQ(stern_brocot(Q(8, 25), Q(17, 50), 20), Q(1, 3));
  const Rational eps = pow2(-40);
  EXPECT_EQ(stern_brocot(Q(5, 13) - eps, Q(5, 13) + eps, 8), Q(5, 13));
  EXPECT_THROW(stern_brocot(Q(5, 13) - eps, Q(5, 13) + eps, 6), depth_exceeded);
}

TEST(SternBrocotProperty, InsideTheIntervalAndWithinDepth) {
  Rng rng(31);
  for (int i = 0; i < 3000; ++i) {
    Rational a = abs(random_rational(rng, 1 + rng.below(40)));
    Rational b = abs(random_rational(rng, 1 + rng.below(40)));
    if (b < a) std::swap(a, b);
    const std::size_t depth = bit_complexity(a).value + bit_complexity(b).value + 2;
    const Rational s = stern_brocot(a, b, depth);
    ASSERT_GE(s, a);
    ASSERT_LE(s, b);
    ASSERT_LE(bit_complexity(s).value, depth);
    // no simpler rational: any rational with a smaller denominator lies outside
    if (s.denominator() > 1) {
      const BigInt q = s.denominator() - 1;
      BigInt lo_num;
      mpz_cdiv_q(lo_num.get_mpz_t(), BigInt(a.numerator() * q).get_mpz_t(), a.denominator().get_mpz_t());
      ASSERT_GT(Rational(lo_num, q), b);
    }
  }
}

TEST(BinarySearch, CounterexampleCrossing) {
  for (Precision prec : {Precision::certified, Precision::worst_case}) {
    QueryOracle o(counterexample_game());
    const MixedStrategy p1 = S({{1, 4}, {1, 2}, {1, 4}});
    const MixedStrategy p2 = S({{1, 2}, {1, 10}, {2, 5}});
    const SearchResult r = binary_search(o, 0, p1, p2, SearchOptions{prec});
    EXPECT_EQ(r.point, S({{9, 26}, {9, 26}, {4, 13}}));
    EXPECT_EQ(r.lambda, Q(5, 13));
    const std::size_t b = std::max(bit_complexity(p1.span()), bit_complexity(p2.span())).value;
    EXPECT_EQ(b, 5u);
    EXPECT_LE(r.queries, 6u * 3 * (5 * b + 8 * 2));
    EXPECT_EQ(o.query_count(), r.queries + 2);
  }
}

TEST(BinarySearch, WorstCaseModeStopsAtTheThreshold) {
  QueryOracle o(counterexample_game());
  const SearchResult r =
      binary_search(o, 0, S({{1, 4}, {1, 2}, {1, 4}}), S({{1, 2}, {1, 10}, {2, 5}}), SearchOptions{Precision::worst_case});
  EXPECT_EQ(r.queries, r.halving_bound);
  EXPECT_EQ(r.upper - r.lower, pow2(-static_cast<long>(r.halving_bound)));
  EXPECT_EQ(r.depth, 3u * 3 * (5 * 5 + 8 * 2));
}

TEST(BinarySearch, MidpointCrossing) {
  QueryOracle o(counterexample_game());
  const MixedStrategy inside = S({{5, 8}, {3, 8}, {0, 1}});
  const MixedStrategy outside = S({{1, 4}, {1, 2}, {1, 4}});
  ASSERT_EQ(o.query(inside), 1u);
  ASSERT_NE(o.query(S({{7, 16}, {7, 16}, {1, 8}})), 1u);
  const SearchResult r = binary_search_oriented(o, 1, inside, outside);
  EXPECT_EQ(r.lambda, Q(1, 2));
  EXPECT_EQ(r.point, S({{7, 16}, {7, 16}, {1, 8}}));
}

TEST(BinarySearch, OrientationError) {
  QueryOracle o(counterexample_game());
  EXPECT_THROW(binary_search(o, 0, S({{1, 4}, {1, 2}, {1, 4}}), S({{1, 5}, {3, 5}, {1, 5}})), orientation_error);
  EXPECT_THROW(binary_search(o, 2, S({{1, 4}, {1, 2}, {1, 4}}), S({{1, 5}, {3, 5}, {1, 5}})), orientation_error);
}

TEST(BinarySearchProperty, ExactCrossingsOnRandomSegments) {
  Rng rng(41);
  const Rational delta = Q(1, 100);
  std::size_t searches = 0;
  for (std::uint64_t seed = 0; searches < 300; ++seed) {
    const GameInstance g = generate_random(2 + seed % 3, 2 + seed % 3, 8, 7000 + seed);
    const auto regions = true_regions(g);
    std::vector<Action> full;
    for (Action j = 0; j < regions.size(); ++j) {
      if (regions[j].is_full_dimensional()) full.push_back(j);
    }
    if (full.size() < 2) continue;
    const auto planes = separating_hyperplanes(g);
    for (int t = 0; t < 10; ++t, ++searches) {
      const Action j = full[rng.below(full.size())];
      Action k = full[rng.below(full.size())];
      if (k == j) k = full[(std::find(full.begin(), full.end(), j) - full.begin() + 1) % full.size()];
      const MixedStrategy a = sample_int(regions[j], delta, rng);
      const MixedStrategy b = sample_int(regions[k], delta, rng);
      QueryOracle o(g);
      const SearchResult r = binary_search(o, j, a, b);
      ASSERT_TRUE(std::any_of(planes.begin(), planes.end(), [&](const Hyperplane& h) { return h.contains(r.point.span()); }));
      const std::size_t bb = std::max(bit_complexity(a.span()), bit_complexity(b.span())).value;
      ASSERT_LE(r.queries, 6 * g.leader_actions() * (5 * bb + 8 * g.payoff_bits()));
      // bracket invariant: target on the lower end, something else on the upper end
      ASSERT_EQ(o.query(MixedStrategy(detail::interpolate(a, b, r.lower))), j);
      ASSERT_NE(o.query(MixedStrategy(detail::interpolate(a, b, r.upper))), j);
    }
  }
}
