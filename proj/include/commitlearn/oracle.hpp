#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "commitlearn/game.hpp"

namespace commitlearn {

using Action = std::size_t;

/// Follower best response at a scaled strategy: maximize follower utility,
/// then leader utility among the follower-optimal actions, then take the
/// lowest index. Every comparison is on exact integers.
inline Action best_response(const GameInstance& g, const ScaledStrategy& p) {
  const std::size_t m = g.leader_actions();
  const std::size_t n = g.follower_actions();
  const auto& f = g.follower_integers();
  const auto& l = g.leader_integers();

  Action best = 0;
  BigInt best_f, best_l, uf, ul;
  for (Action a = 0; a < n; ++a) {
    uf = 0;
    for (std::size_t i = 0; i < m; ++i) uf += p.weights[i] * f[i * n + a];
    const int c = a == 0 ? 1 : cmp(uf, best_f);
    if (c < 0) continue;
    ul = 0;
    for (std::size_t i = 0; i < m; ++i) ul += p.weights[i] * l[i * n + a];
    if (c > 0 || cmp(ul, best_l) > 0) {
      best = a;
      best_f = uf;
      best_l = ul;
    }
  }
  return best;
}

inline Action best_response(const GameInstance& g, const MixedStrategy& p) {
  if (p.size() != g.leader_actions()) throw domain_error("strategy dimension does not match the game");
  return best_response(g, ScaledStrategy::from(p));
}

/// Leader expected utility when committing to p against action a.
inline Rational leader_utility(const GameInstance& g, std::span<const Rational> p, Action a) {
  Rational u;
  for (std::size_t i = 0; i < p.size(); ++i) u += p[i] * g.leader_payoff(i, a);
  return u;
}

inline Rational follower_utility(const GameInstance& g, std::span<const Rational> p, Action a) {
  Rational u;
  for (std::size_t i = 0; i < p.size(); ++i) u += p[i] * g.follower_payoff(i, a);
  return u;
}

/// Leader expected utility under the tie-broken best response.
inline Rational leader_value(const GameInstance& g, const MixedStrategy& p) {
  return leader_utility(g, p.span(), best_response(g, p));
}

struct TranscriptEntry {
  std::size_t index;
  MixedStrategy strategy;
  Action response;
};

/// Metered best-response channel. Holds the game hidden from the learner; the
/// only payoff-dependent thing it reveals is the response to each query. The
/// public dimensions and the payoff bit bound are the learner's prior
/// knowledge. Single-owner: not safe for concurrent queries.
class QueryOracle {
 public:
  explicit QueryOracle(std::shared_ptr<const GameInstance> game, Mode mode = Mode::standard,
                       bool record_transcript = false)
      : game_(std::move(game)), mode_(mode), record_(record_transcript) {}

  QueryOracle(GameInstance game, Mode mode = Mode::standard, bool record_transcript = false)
      : QueryOracle(std::make_shared<const GameInstance>(std::move(game)), mode, record_transcript) {}

  std::size_t leader_actions() const { return game_->leader_actions(); }
  std::size_t follower_actions() const { return game_->follower_actions(); }
  std::size_t payoff_bits() const { return game_->payoff_bits(mode_); }
  Mode mode() const { return mode_; }

  Action query(const ScaledStrategy& p) {
    const Action a = best_response(*game_, p);
    if (record_) transcript_.push_back({count_, p.reduce(), a});
    ++count_;
    return a;
  }

  Action query(const MixedStrategy& p) {
    if (p.size() != leader_actions()) throw domain_error("strategy dimension does not match the game");
    const Action a = best_response(*game_, ScaledStrategy::from(p));
    if (record_) transcript_.push_back({count_, p, a});
    ++count_;
    return a;
  }

  std::size_t query_count() const { return count_; }

  /// Empty unless the oracle was built with transcript recording on; when on,
  /// its length always equals query_count().
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  bool records_transcript() const { return record_; }

  /// Ground truth, for verification code only; learners never call this.
  const GameInstance& hidden_game() const { return *game_; }

 private:
  std::shared_ptr<const GameInstance> game_;
  Mode mode_;
  bool record_;
  std::size_t count_ = 0;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace commitlearn
