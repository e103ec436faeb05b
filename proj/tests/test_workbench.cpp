#include <gtest/gtest.h>

#include <string>

#include "support.hpp"

using namespace commitlearn;

namespace {

const std::string data_dir = COMMITLEARN_DATA_DIR;

std::string instance_text(const std::string& leader00, const std::string& tail = "") {
  return "{\n  \"m\": 1,\n  \"n\": 2,\n  \"leader\": [[" + leader00 + ", [1,2]]],\n  \"follower\": [[[0,1], [1,1]]]" +
         tail + "\n}\n";
}

}  // namespace

TEST(ParseInstance, ShippedFile) {
  io::InstanceMeta meta;
  const GameInstance g = io::parse_instance(data_dir + "/appendix_b.json", &meta);
  EXPECT_EQ(meta.name, "appendix-b");
  EXPECT_EQ(g.follower(), counterexample_game().follower());
  EXPECT_EQ(g.leader(), counterexample_game().leader());
  EXPECT_EQ(g.follower()[0], ints({0, 1, 0}));
  EXPECT_EQ(g.payoff_bits(), 2u);
}

TEST(ParseInstance, Errors) {
  EXPECT_NO_THROW(io::parse_instance_text(instance_text("[1,4]")));
  EXPECT_THROW(io::parse_instance_text(instance_text("[3,2]")), domain_error);
  EXPECT_THROW(io::parse_instance_text(instance_text("[-1,2]")), domain_error);
  EXPECT_THROW(io::parse_instance_text(instance_text("[1,0]")), parse_error);
  EXPECT_THROW(io::parse_instance_text(instance_text("[1,-2]")), parse_error);
  EXPECT_THROW(io::parse_instance_text(instance_text("[1]")), parse_error);
  EXPECT_THROW(io::parse_instance_text("{\"m\": 1}"), parse_error);
  EXPECT_THROW(io::parse_instance(data_dir + "/does-not-exist.json"), parse_error);
  try {
    io::parse_instance_text(instance_text("[1,0]"));
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("leader"), std::string::npos) << e.what();
  }
  try {
    io::parse_instance_text("{\n  \"m\": 1,\n  \"n\": 2,\n  \"leader\": [[[1,2] [1,2]]]\n}\n");
    FAIL() << "malformed JSON accepted";
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(ParseInstance, BigIntegersSurvive) {
  const BigInt big = (BigInt(1) << 200) + 1;
  const GameInstance g({Point{Rational(big, big + 1)}}, {Point{Rational(BigInt(1), big)}});
  const std::string text = io::serialize_instance(g);
  EXPECT_NE(text.find(big.get_str()), std::string::npos);
  const GameInstance back = io::parse_instance_text(text);
  EXPECT_EQ(back.leader(), g.leader());
  EXPECT_EQ(back.follower(), g.follower());
}

TEST(WorkbenchProperty, InstanceRoundTrip) {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t m = 1 + rng.below(4), n = 1 + rng.below(4);
    const GameInstance g = generate_random(m, n, 2 + rng.below(30), seed);
    const io::InstanceMeta meta{"random", seed, 8};
    io::InstanceMeta back_meta;
    const GameInstance back = io::parse_instance_text(io::serialize_instance(g, meta), &back_meta);
    ASSERT_EQ(back.leader(), g.leader());
    ASSERT_EQ(back.follower(), g.follower());
    ASSERT_EQ(back_meta.seed, seed);
  }
}

TEST(Generate, DeterministicAndBitBounded) {
  const GameInstance a = generate_random(3, 3, 8, 7), b = generate_random(3, 3, 8, 7);
  EXPECT_EQ(a.leader(), b.leader());
  EXPECT_EQ(a.follower(), b.follower());
  EXPECT_NE(generate_random(3, 3, 8, 8).follower(), a.follower());
  std::size_t worst = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) worst = std::max(worst, generate_random(3, 3, 8, seed).payoff_bits());
  EXPECT_LE(worst, 8u);
  EXPECT_THROW(generate_random(3, 3, 1, 0), domain_error);
}

TEST(Generate, EquivalentActions) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GameInstance g = generate_with_equivalent_actions(3, 3, 8, seed);
    EXPECT_TRUE(has_equivalent_actions(g));
    EXPECT_LE(g.payoff_bits(Mode::equivalent_actions), 10u);
  }
  EXPECT_THROW(generate_with_equivalent_actions(3, 1, 8, 0), domain_error);
}

TEST(Report, RoundTripAndDeterminism) {
  auto game = std::make_shared<const GameInstance>(counterexample_game());
  const RunResult a = run_learner(game, LearnerConfig{}, 42, true);
  const RunResult b = run_learner(game, LearnerConfig{}, 42, true);
  EXPECT_EQ(io::serialize_report(a.report), io::serialize_report(b.report));
  EXPECT_EQ(io::transcript_jsonl(a.transcript), io::transcript_jsonl(b.transcript));

  const io::RunReport verified = verify_report(*game, a.report);
  ASSERT_TRUE(verified.match.has_value());
  EXPECT_TRUE(*verified.match);
  EXPECT_EQ(*verified.baseline_value, Q(1));
  const io::RunReport back = io::parse_report_text(io::serialize_report(verified));
  EXPECT_EQ(io::serialize_report(back), io::serialize_report(verified));

  io::RunReport wrong = a.report;
  wrong.value = Q(1, 2);
  EXPECT_FALSE(*verify_report(*game, wrong).match);
}

TEST(Report, TranscriptLines) {
  QueryOracle o(counterexample_game(), Mode::standard, true);
  o.query(S({{1, 4}, {1, 2}, {1, 4}}));
  o.query(MixedStrategy::pure(3, 2));
  EXPECT_EQ(io::transcript_jsonl(o.transcript()),
            "{\"k\":0,\"p\":[[1,4],[1,2],[1,4]],\"a\":0}\n{\"k\":1,\"p\":[[0,1],[0,1],[1,1]],\"a\":2}\n");
}

TEST(Sweep, IndependentOfJobsAndCarriesTheBudget) {
  SweepSpec spec;
  spec.shapes = {{3, 3}, {2, 3}};
  spec.runs = 4;
  spec.seed = 11;
  const std::string one = sweep_csv(sweep(spec));
  spec.jobs = 3;
  const std::string three = sweep_csv(sweep(spec));
  EXPECT_EQ(one, three);
  EXPECT_NE(one.substr(0, one.find('\n')).find(",budget,"), std::string::npos);
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 9);
  EXPECT_DOUBLE_EQ(query_budget(3, 3, 8, Q(1, 10)), 9 * (2187 * 8 * std::log2(10.0) + 20));
}
