#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace commitlearn;

namespace {

const Rational delta = Q(1, 100);

std::set<Point> vertex_set(const Polytope& p) { return {p.vertices().begin(), p.vertices().end()}; }

}  // namespace

TEST(CheckVertex, CounterexampleExamples) {
  const GameInstance g = counterexample_game();
  const MixedStrategy inside = S({{1, 6}, {2, 3}, {1, 6}});
  for (Precision prec : {Precision::certified, Precision::worst_case}) {
    QueryOracle o(g);
    LearnerConfig cfg;
    cfg.precision = prec;
    const LearnerParams lp = LearnerParams::of(o, cfg);
    auto check = [&](const Point& v) { return check_vertex(o, v, inside, check_weight(lp, v, inside), 0); };
    EXPECT_TRUE(check(inside.probabilities()));
    EXPECT_FALSE(check(ints({1, 0, 0})));
    EXPECT_TRUE(check(P({{1, 2}, {1, 2}, {0, 1}})));
    EXPECT_TRUE(check(P({{1, 3}, {1, 3}, {1, 3}})));
    EXPECT_FALSE(check(P({{1, 2}, {0, 1}, {1, 2}})));
    EXPECT_EQ(o.query_count(), 5u);
  }
}

TEST(CheckWeight, WorstCaseValueUsesTheLargestBitBound) {
  QueryOracle o(counterexample_game());
  LearnerConfig cfg;
  cfg.precision = Precision::worst_case;
  const LearnerParams lp = LearnerParams::of(o, cfg);
  EXPECT_EQ(lp.delta, Q(1, 10) / Q(2 * 18 * 18 + 27));
  const std::size_t b = lp.sample_bits;
  EXPECT_GE(b, vertex_bit_bound(2, 3));
  EXPECT_EQ(check_weight(lp, ints({1, 0, 0}), S({{1, 3}, {1, 3}, {1, 3}})),
            pow2(-static_cast<long>(3 * (b + 8) + 1)) / Q(6));
}

TEST(SampleUncoveredInterior, Examples) {
  const GameInstance g = counterexample_game();
  Rng rng(3);
  const std::vector<Polytope> none;
  EXPECT_TRUE(Polytope::simplex(3).relative_interior_contains(sample_uncovered_interior(none, 3, delta, rng).span()));

  const auto regions = true_regions(g);
  const std::vector<Polytope> first{regions[0]};
  for (int i = 0; i < 50; ++i) {
    const MixedStrategy p = sample_uncovered_interior(first, 3, delta, rng);
    EXPECT_NE(best_response(g, p), 0u);
    EXPECT_FALSE(regions[0].contains(p.span()));
  }
  EXPECT_THROW(sample_uncovered_interior(regions, 3, delta, rng), fully_covered);
}

TEST(Learn, CounterexampleIdentityLeader) {
  const GameInstance g = counterexample_game();
  const auto truth = true_regions(g);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    QueryOracle o(g);
    const LearnOutcome out = learn(o, g.leader(), LearnerConfig{}, seed);
    EXPECT_TRUE(out.success);
    EXPECT_EQ(out.p_star, S({{0, 1}, {0, 1}, {1, 1}}));
    EXPECT_EQ(out.value, Q(1));
    EXPECT_EQ(out.query_count, o.query_count());
    ASSERT_EQ(out.regions.size(), 3u);
    for (const auto& r : out.regions) EXPECT_EQ(vertex_set(r.region), vertex_set(truth[r.action]));
  }
}

TEST(Learn, SingleFollowerAction) {
  const GameInstance g({P({{1, 4}}), P({{3, 4}}), P({{1, 2}})}, {P({{1, 2}}), P({{0, 1}}), P({{1, 1}})});
  QueryOracle o(g);
  const LearnOutcome out = learn(o, g.leader(), LearnerConfig{}, 1);
  EXPECT_EQ(out.p_star, MixedStrategy::pure(3, 1));
  EXPECT_EQ(out.value, Q(3, 4));
  ASSERT_EQ(out.regions.size(), 1u);
  EXPECT_TRUE(out.regions.front().planes.empty());

  const GameInstance h = generate_random(2, 1, 4, 77);
  QueryOracle oh(h);
  const LearnOutcome o2 = learn(oh, h.leader(), LearnerConfig{}, 2);
  const Action best = h.leader_payoff(0, 0) >= h.leader_payoff(1, 0) ? 0 : 1;
  EXPECT_EQ(o2.value, h.leader_payoff(best, 0));
}

TEST(Learn, ModeMismatchIsRejected) {
  QueryOracle o(counterexample_game(), Mode::equivalent_actions);
  EXPECT_THROW(learn(o, counterexample_game().leader(), LearnerConfig{}, 0), domain_error);
}

TEST(Learn, WorstCasePrecisionOnTwoLeaderActions) {
  const GameInstance g({P({{1, 1}, {0, 1}, {1, 2}}), P({{0, 1}, {1, 1}, {1, 4}})},
                       {P({{1, 1}, {0, 1}, {1, 2}}), P({{0, 1}, {1, 1}, {5, 8}})});
  LearnerConfig cfg;
  cfg.precision = Precision::worst_case;
  QueryOracle o(g);
  const LearnOutcome out = learn(o, g.leader(), cfg, 5);
  EXPECT_TRUE(out.success);
  EXPECT_EQ(out.value, brute_force_optimal(g).value);
}

TEST(LearnProperty, RandomGamesMatchTheBaseline) {
  std::size_t runs = 0, matches = 0, disagreements = 0;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GameInstance g = generate_random(3, 3, 8, 100 + seed);
    QueryOracle o(g);
    const LearnOutcome out = learn(o, g.leader(), LearnerConfig{}, seed);
    ++runs;
    matches += out.value == brute_force_optimal(g).value;
    const auto truth = true_regions(g);
    for (const auto& c : out.checks) disagreements += c.passed != in_revealed_region(g, c.target, c.vertex);
    for (const auto& r : out.regions) {
      // soundness: every true vertex of the region is inside the learned bound
      for (const auto& v : truth[r.action].vertices()) ASSERT_TRUE(r.region.contains(v));
      if (out.success && !has_equivalent_actions(g)) {
        ASSERT_EQ(vertex_set(r.region), vertex_set(truth[r.action]));
      }
    }
    worst = std::max(worst, o.query_count() / query_budget(3, 3, g.payoff_bits(), Q(1, 10)));
  }
  EXPECT_GE(matches * 100, runs * 95);
  EXPECT_EQ(disagreements, 0u);
  EXPECT_LE(worst, 1.0 / 32);
}

TEST(LearnProperty, EquivalentActionsMode) {
  std::size_t matches = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GameInstance g = generate_with_equivalent_actions(3, 3, 8, 300 + seed);
    QueryOracle o(g, Mode::equivalent_actions);
    LearnerConfig cfg;
    cfg.mode = Mode::equivalent_actions;
    const LearnOutcome out = learn(o, g.leader(), cfg, seed);
    matches += out.value == brute_force_optimal(g, Mode::equivalent_actions).value;
    for (const auto& c : out.checks) ASSERT_EQ(c.passed, in_region(g, c.target, c.vertex, Mode::equivalent_actions));
  }
  EXPECT_GE(matches, 27u);
}

TEST(LearnProperty, ReproducibleForAFixedSeed) {
  const GameInstance g = generate_random(4, 3, 8, 5);
  QueryOracle a(g, Mode::standard, true), b(g, Mode::standard, true);
  const LearnOutcome x = learn(a, g.leader(), LearnerConfig{}, 9);
  const LearnOutcome y = learn(b, g.leader(), LearnerConfig{}, 9);
  EXPECT_EQ(x.p_star, y.p_star);
  EXPECT_EQ(a.query_count(), b.query_count());
  ASSERT_EQ(a.transcript().size(), b.transcript().size());
  for (std::size_t i = 0; i < a.transcript().size(); ++i) {
    ASSERT_EQ(a.transcript()[i].strategy, b.transcript()[i].strategy);
  }
}
