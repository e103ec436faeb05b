#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "commitlearn/baseline.hpp"
#include "commitlearn/generate.hpp"
#include "commitlearn/io.hpp"
#include "commitlearn/learner.hpp"
#include "commitlearn/oracle.hpp"
#include "commitlearn/sampler.hpp"
#include "commitlearn/search.hpp"

namespace commitlearn {

struct RunResult {
  io::RunReport report;
  std::optional<LearnOutcome> outcome;  // empty when the learner gave up before closing anything
  std::vector<TranscriptEntry> transcript;
  std::string failure;
};

/// One learner run on a fresh oracle. A run that closes no region at all is
/// reported with success=false and value 0 instead of throwing.
inline RunResult run_learner(std::shared_ptr<const GameInstance> game, const LearnerConfig& cfg, std::uint64_t seed,
                             bool record_transcript = false) {
  QueryOracle oracle(game, cfg.mode, record_transcript);
  RunResult r;
  r.report.seed = seed;
  r.report.zeta = cfg.zeta;
  r.report.m = game->leader_actions();
  r.report.n = game->follower_actions();
  r.report.payoff_bits = game->payoff_bits(cfg.mode);
  r.report.mode = cfg.mode;
  r.report.precision = to_string(cfg.precision);
  try {
    r.outcome = learn(oracle, game->leader(), cfg, seed);
    r.report.value = r.outcome->value;
    r.report.p_star = r.outcome->p_star.probabilities();
    r.report.success = r.outcome->success;
  } catch (const retry_budget_exhausted& e) {
    r.failure = e.what();
    r.report.value = Rational(0);
    r.report.p_star = MixedStrategy::uniform(game->leader_actions()).probabilities();
    r.report.success = false;
  }
  r.report.queries = oracle.query_count();
  r.transcript = oracle.transcript();
  return r;
}

/// Fills in the baseline fields of a report.
inline io::RunReport verify_report(const GameInstance& g, io::RunReport report) {
  const Commitment best = brute_force_optimal(g, report.mode);
  report.baseline_value = best.value;
  report.match = report.value == best.value;
  return report;
}

inline double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// n^2 (m^7 L log2(1/zeta) + binom(m+n, m)); binom(m+2n, m) with leader-side
/// splits, which can double the number of hyperplanes.
inline double query_budget(std::size_t m, std::size_t n, std::size_t payoff_bits, const Rational& zeta,
                           Mode mode = Mode::standard) {
  const double nn = static_cast<double>(n);
  const double log_inv = -std::log2(zeta.value().get_d());
  const std::size_t cells = mode == Mode::standard ? m + n : m + 2 * n;
  return nn * nn * (std::pow(static_cast<double>(m), 7) * static_cast<double>(payoff_bits) * log_inv + binomial(cells, m));
}

// --- exponential binary-search counterexample --------------------------------

struct ExpBinaryRow {
  unsigned exponent;   // eps = 2^-exponent
  std::size_t naive;   // fixed-precision halving from the near-degenerate start
  std::size_t bounded; // exact search from a sampled, bit-bounded start
};

/// Hyperplane through which the segment leaves the region of p1's response
/// (the earliest crossing of one of that action's separating planes).
inline Hyperplane exit_plane(const GameInstance& g, const MixedStrategy& p1, const MixedStrategy& p2) {
  const Action a = best_response(g, p1);
  std::optional<std::pair<Rational, Hyperplane>> best;
  for (Action k = 0; k < g.follower_actions(); ++k) {
    if (k == a) continue;
    Point c = follower_preference(g, a, k);
    if (is_zero_vector(c)) continue;
    Hyperplane h(std::move(c), Rational(0));
    const Rational u = h.evaluate(p1.span());
    const Rational v = h.evaluate(p2.span());
    if (u == v || (u.sign() >= 0) == (v.sign() >= 0)) continue;
    const Rational t = u / (u - v);
    if (!best || t < best->first) best.emplace(t, h);
  }
  if (!best) throw degenerate_geometry("segment never leaves the region of its start");
  return best->second;
}

/// For each eps = 2^-k, counts queries of plain halving along
/// (1/3-eps, 1/3+eps, 1/3) -> (1/2, 1/10, 2/5) until the exit crossing is
/// isolated, and of the exact search from one bit-bounded point of the
/// start's region (drawn once from `seed`) to the same far endpoint.
inline std::vector<ExpBinaryRow> bench_exp_binary(const GameInstance& g, std::span<const unsigned> exponents,
                                                  std::uint64_t seed = 0,
                                                  const Rational& delta = Rational(BigInt(1), BigInt(100))) {
  if (g.leader_actions() != 3) throw domain_error("the counterexample segment needs three leader actions");
  std::vector<ExpBinaryRow> rows;
  for (unsigned k : exponents) {
    const Rational eps(BigInt(1), BigInt(1) << static_cast<mp_bitcnt_t>(k));
    const Segment seg = counterexample_segment(eps);
    const std::size_t naive = naive_binary_search_queries(g, seg.from, seg.to, exit_plane(g, seg.from, seg.to));

    const Action start = best_response(g, seg.from);
    const Polytope region = true_regions(g)[start];
    Rng rng(seed);
    const MixedStrategy inside = sample_int(region, delta, rng, SamplerOptions{Precision::certified, g.payoff_bits()});
    QueryOracle oracle(g);
    (void)binary_search(oracle, start, inside, seg.to);
    rows.push_back({k, naive, oracle.query_count()});
  }
  return rows;
}

inline std::string exp_binary_json(const std::vector<ExpBinaryRow>& rows) {
  std::string s = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s += "  {\"k\": " + std::to_string(rows[i].exponent) + ", \"naive\": " + std::to_string(rows[i].naive) +
         ", \"bounded\": " + std::to_string(rows[i].bounded) + "}" + (i + 1 < rows.size() ? ",\n" : "\n");
  }
  return s + "]\n";
}

// --- sweep --------------------------------------------------------------------

/// splitmix64 finalizer; derives independent per-run seeds from one master seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t run_seed(std::uint64_t master, std::size_t m, std::size_t n, std::size_t run, std::uint64_t salt) {
  return mix_seed(mix_seed(mix_seed(mix_seed(master) ^ m) ^ (n << 8)) ^ (run << 16) ^ salt);
}

struct SweepSpec {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;  // (m, n)
  std::size_t bits = 8;
  Rational zeta = Rational(BigInt(1), BigInt(10));
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  Mode mode = Mode::standard;
  Precision precision = Precision::certified;
  unsigned jobs = 1;
};

struct SweepRow {
  std::size_t m = 0, n = 0, run = 0;
  std::uint64_t instance_seed = 0, learner_seed = 0;
  std::size_t payoff_bits = 0;
  std::size_t queries = 0;
  double budget = 0;
  bool success = false;
  bool match = false;
  std::size_t events = 0;
  std::size_t vertex_checks = 0;
  std::size_t check_disagreements = 0;  // checks whose answer differs from the tie-broken region
  std::size_t untied_disagreements = 0; // same, against the region before tie-breaking
  bool twin_columns = false;            // some follower columns are identical
  Rational value, baseline_value;
};

inline SweepRow sweep_run(const SweepSpec& spec, std::size_t m, std::size_t n, std::size_t run) {
  SweepRow row;
  row.m = m;
  row.n = n;
  row.run = run;
  row.instance_seed = run_seed(spec.seed, m, n, run, 1);
  row.learner_seed = run_seed(spec.seed, m, n, run, 2);
  auto game = std::make_shared<const GameInstance>(
      spec.mode == Mode::standard ? generate_random(m, n, spec.bits, row.instance_seed)
                                  : generate_with_equivalent_actions(m, n, spec.bits, row.instance_seed));
  LearnerConfig cfg;
  cfg.zeta = spec.zeta;
  cfg.mode = spec.mode;
  cfg.precision = spec.precision;
  const RunResult r = run_learner(game, cfg, row.learner_seed);
  const io::RunReport rep = verify_report(*game, r.report);
  row.twin_columns = has_equivalent_actions(*game);
  row.payoff_bits = rep.payoff_bits;
  row.queries = rep.queries;
  row.budget = query_budget(m, n, rep.payoff_bits, spec.zeta, spec.mode);
  row.success = rep.success;
  row.match = *rep.match;
  row.value = rep.value;
  row.baseline_value = *rep.baseline_value;
  if (r.outcome) {
    row.events = r.outcome->events.size();
    row.vertex_checks = r.outcome->checks.size();
    for (const auto& c : r.outcome->checks) {
      if (c.passed != in_revealed_region(*game, c.target, c.vertex)) ++row.check_disagreements;
      if (c.passed != in_region(*game, c.target, c.vertex, spec.mode)) ++row.untied_disagreements;
    }
  } else {
    row.events = 1;
  }
  return row;
}

/// All runs of the sweep, in (shape, run) order regardless of `jobs`; each
/// worker owns its game, oracle and generator.
inline std::vector<SweepRow> sweep(const SweepSpec& spec) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> tasks;
  for (const auto& [m, n] : spec.shapes) {
    for (std::size_t r = 0; r < spec.runs; ++r) tasks.emplace_back(m, n, r);
  }
  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      const auto& [m, n, r] = tasks[i];
      rows[i] = sweep_run(spec, m, n, r);
    }
  };
  const unsigned jobs = std::max(1u, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "m,n,run,instance_seed,learner_seed,L,queries,budget,ratio,success,match,events,vertex_checks,"
        "check_disagreements,untied_disagreements,twin_columns,value,baseline_value\n";
  for (const auto& r : rows) {
    os << r.m << ',' << r.n << ',' << r.run << ',' << r.instance_seed << ',' << r.learner_seed << ','
       << r.payoff_bits << ',' << r.queries << ',' << static_cast<std::uint64_t>(std::llround(r.budget)) << ','
       << static_cast<double>(r.queries) / r.budget << ',' << r.success << ',' << r.match << ',' << r.events << ','
       << r.vertex_checks << ',' << r.check_disagreements << ',' << r.untied_disagreements << ',' << r.twin_columns << ',' << r.value << ',' << r.baseline_value << '\n';
  }
  return os.str();
}

}  // namespace commitlearn
