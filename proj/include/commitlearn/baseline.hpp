#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "commitlearn/game.hpp"
#include "commitlearn/geometry.hpp"
#include "commitlearn/oracle.hpp"

namespace commitlearn {

/// Normal of the follower's preference for j over k: sum_i p_i (u_f(i,j) - u_f(i,k)).
inline Point follower_preference(const GameInstance& g, Action j, Action k) {
  Point c(g.leader_actions());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.follower_payoff(i, j) - g.follower_payoff(i, k);
  return c;
}

inline Point leader_preference(const GameInstance& g, Action j, Action k) {
  Point c(g.leader_actions());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.leader_payoff(i, j) - g.leader_payoff(i, k);
  return c;
}

inline bool is_zero_vector(const Point& c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& q) { return q.is_zero(); });
}

/// Constraints defining the region of action j: follower preference over
/// every action with a different payoff column and, in equivalent-actions
/// mode, leader preference over every action with the same column.
inline std::vector<Halfspace> region_constraints(const GameInstance& g, Action j, Mode mode) {
  std::vector<Halfspace> out;
  for (Action k = 0; k < g.follower_actions(); ++k) {
    if (k == j) continue;
    Point c = follower_preference(g, j, k);
    if (!is_zero_vector(c)) {
      out.push_back(Halfspace::at_least(std::move(c), Rational(0), HyperplaneKind::separating));
    } else if (mode == Mode::equivalent_actions) {
      Point l = leader_preference(g, j, k);
      if (!is_zero_vector(l)) out.push_back(Halfspace::at_least(std::move(l), Rational(0), HyperplaneKind::leader_separating));
    }
  }
  return out;
}

/// True best-response region of every follower action, indexed by action.
inline std::vector<Polytope> true_regions(const GameInstance& g, Mode mode = Mode::standard) {
  std::vector<Polytope> out;
  for (Action j = 0; j < g.follower_actions(); ++j) {
    Polytope p = Polytope::simplex(g.leader_actions());
    for (const auto& h : region_constraints(g, j, mode)) p = p.intersect(h);
    out.push_back(std::move(p));
  }
  return out;
}

/// Exact membership of p in the region of action j.
inline bool in_region(const GameInstance& g, Action j, std::span<const Rational> p, Mode mode = Mode::standard) {
  const auto cons = region_constraints(g, j, mode);
  return std::all_of(cons.begin(), cons.end(), [&](const Halfspace& h) { return h.contains(p); });
}

/// Membership in the region the tie-broken oracle actually reveals for j:
/// P_j itself unless j has a twin with an identical follower column, in which
/// case the twins are split by leader preference.
inline bool in_revealed_region(const GameInstance& g, Action j, std::span<const Rational> p) {
  return in_region(g, j, p, Mode::equivalent_actions);
}

inline bool has_equivalent_actions(const GameInstance& g) {
  for (Action j = 0; j < g.follower_actions(); ++j) {
    for (Action k = j + 1; k < g.follower_actions(); ++k) {
      if (g.equivalent(j, k)) return true;
    }
  }
  return false;
}

/// Every separating hyperplane of the game (one per unordered pair of actions
/// with different columns, plus leader-side splits in equivalent-actions mode).
inline std::vector<Hyperplane> separating_hyperplanes(const GameInstance& g, Mode mode = Mode::standard) {
  std::vector<Hyperplane> out;
  for (Action j = 0; j < g.follower_actions(); ++j) {
    for (Action k = j + 1; k < g.follower_actions(); ++k) {
      Point c = follower_preference(g, j, k);
      if (!is_zero_vector(c)) {
        out.emplace_back(std::move(c), Rational(0), HyperplaneKind::separating);
      } else if (mode == Mode::equivalent_actions) {
        Point l = leader_preference(g, j, k);
        if (!is_zero_vector(l)) out.emplace_back(std::move(l), Rational(0), HyperplaneKind::leader_separating);
      }
    }
  }
  return out;
}

struct Commitment {
  MixedStrategy strategy;
  Rational value;
};

/// Optimal commitment by full enumeration: every vertex of every
/// full-dimensional region, valued under the tie-broken best response;
/// ties go to the lexicographically smallest strategy.
inline Commitment brute_force_optimal(const GameInstance& g, Mode mode = Mode::standard) {
  std::optional<Commitment> best;
  for (const auto& region : true_regions(g, mode)) {
    if (!region.is_full_dimensional()) continue;
    for (const auto& v : region.vertices()) {
      MixedStrategy s(v);
      Rational u = leader_value(g, s);
      if (!best || u > best->value || (u == best->value && s < best->strategy)) best = Commitment{s, u};
    }
  }
  if (!best) throw assertion_violation("no full-dimensional best-response region");
  return *best;
}

/// Parameters along p1 -> p2 where the segment meets a separating
/// hyperplane at a single point, ascending and deduplicated.
inline std::vector<Rational> segment_crossings(const GameInstance& g, const MixedStrategy& p1,
                                               const MixedStrategy& p2, Mode mode = Mode::standard) {
  std::vector<Rational> ts;
  for (const auto& h : separating_hyperplanes(g, mode)) {
    const Rational a = h.evaluate(p1.span());
    const Rational b = h.evaluate(p2.span());
    if (a == b) continue;
    const Rational t = a / (a - b);
    if (t.sign() >= 0 && t <= Rational(1)) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

/// Query count of plain fixed-precision halving from p1 (which responds with
/// some action) toward p2, run until the bracket is narrower than the gap
/// between the target plane's crossing and the nearest other crossing (or
/// segment end), i.e. until the crossing is isolated.
inline std::size_t naive_binary_search_queries(const GameInstance& g, const MixedStrategy& p1,
                                               const MixedStrategy& p2, const Hyperplane& target_plane) {
  const Rational a = target_plane.evaluate(p1.span());
  const Rational b = target_plane.evaluate(p2.span());
  if (a == b) throw degenerate_geometry("segment is parallel to the target plane");
  const Rational target = a / (a - b);
  if (target.sign() < 0 || target > Rational(1)) throw degenerate_geometry("target plane does not cross the segment");

  Rational gap = std::min(target, Rational(1) - target);
  for (const auto& t : segment_crossings(g, p1, p2)) {
    if (t != target) gap = std::min(gap, abs(t - target));
  }
  if (gap.is_zero()) throw degenerate_geometry("target crossing sits at a segment end");

  QueryOracle oracle(g);
  const Action side = oracle.query(p1);
  Rational lo(0), hi(1);
  std::size_t queries = 0;
  while (hi - lo >= gap) {
    const Rational mid = (lo + hi) / Rational(2);
    Point p(p1.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = p1[i] + mid * (p2[i] - p1[i]);
    ++queries;
    (oracle.query(MixedStrategy(std::move(p))) == side ? lo : hi) = mid;
  }
  return queries;
}

}  // namespace commitlearn
