#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "commitlearn/errors.hpp"
#include "commitlearn/finder.hpp"
#include "commitlearn/game.hpp"
#include "commitlearn/geometry.hpp"
#include "commitlearn/oracle.hpp"
#include "commitlearn/precision.hpp"
#include "commitlearn/random.hpp"
#include "commitlearn/sampler.hpp"

namespace commitlearn {

struct LearnerConfig {
  Rational zeta = Rational(BigInt(1), BigInt(10));
  Mode mode = Mode::standard;
  Precision precision = Precision::certified;
  // Attempts per failing vertex before the run gives up.
  std::size_t finder_retries = 3;
  // Interior samples that land on an already closed action, per run.
  std::size_t resample_budget = 8;
};

/// Quantities fixed for a whole run.
struct LearnerParams {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t payoff_bits = 0;
  Rational delta;
  std::size_t sample_bits = 0;  // 40 m^3 L + 2 ceil(log2(1/delta))
  Precision precision = Precision::certified;

  static LearnerParams of(const QueryOracle& oracle, const LearnerConfig& cfg) {
    LearnerParams p;
    p.m = oracle.leader_actions();
    p.n = oracle.follower_actions();
    p.payoff_bits = oracle.payoff_bits();
    p.delta = bounds::failure_delta(cfg.zeta, p.m, p.n);
    p.sample_bits = bounds::sample_bits(p.m, p.payoff_bits, p.delta);
    p.precision = cfg.precision;
    return p;
  }
};

/// Weight on the interior point when probing a vertex.
inline Rational check_weight(const LearnerParams& lp, const Point& vertex, const MixedStrategy& interior) {
  if (lp.precision == Precision::certified) {
    return bounds::certified_check_weight(lp.m, lp.payoff_bits, common_denominator(vertex));
  }
  std::size_t b = std::max(lp.sample_bits, vertex_bit_bound(lp.payoff_bits, lp.m));
  b = std::max({b, bit_complexity(vertex).value, bit_complexity(interior.span()).value});
  return bounds::worst_case_check_weight(lp.m, b, lp.payoff_bits);
}

/// Queries weight * interior + (1 - weight) * vertex; true when the response
/// is the target, which for an admissible weight means the vertex lies in the
/// target's region.
inline bool check_vertex(QueryOracle& oracle, const Point& vertex, const MixedStrategy& interior,
                         const Rational& weight, Action target) {
  Point q(vertex.size());
  const Rational rest = Rational(1) - weight;
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = weight * interior[i] + rest * vertex[i];
  return oracle.query(MixedStrategy(std::move(q))) == target;
}

/// Facet halfspaces of a closed region that come from discovered planes
/// (simplex boundaries are left out: their complements miss the simplex
/// interior).
inline std::vector<Halfspace> discovered_facets(const Polytope& region) {
  std::vector<Halfspace> out;
  const Polytope tight = region.irredundant();
  for (const auto& h : tight.constraints()) {
    if (h.plane().kind() != HyperplaneKind::boundary) out.push_back(h);
  }
  return out;
}

/// Interior point of the simplex outside every closed region. The uncovered
/// part is a union of cells, each the simplex cut by the reversal of one
/// facet per closed region; cells are tried in odometer order (last region
/// fastest) and the first full-dimensional one is sampled, anchored at its
/// first m linearly independent vertices.
inline MixedStrategy sample_uncovered_interior(std::span<const Polytope> closed, std::size_t m,
                                               const Rational& delta, Rng& rng, const SamplerOptions& opts = {}) {
  const Polytope simplex = Polytope::simplex(m);
  if (closed.empty()) return sample_int(simplex, delta, rng, opts);

  std::vector<std::vector<Halfspace>> choices;
  for (const auto& region : closed) {
    choices.push_back(discovered_facets(region));
    if (choices.back().empty()) throw fully_covered("a closed region is the whole simplex");
  }
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    Polytope cell = simplex;
    for (std::size_t r = 0; r < choices.size(); ++r) cell = cell.intersect(choices[r][pick[r]].reversed());
    const auto& vs = cell.vertices();
    if (affine_rank(vs) == m) return sample_int(cell, independent_vertices(vs, m), delta, rng, opts);

    std::size_t r = choices.size();
    while (r > 0 && ++pick[r - 1] == choices[r - 1].size()) pick[--r] = 0;
    if (r == 0) break;
  }
  throw fully_covered("every uncovered cell is lower-dimensional");
}

struct VertexCheck {
  Action target;
  Point vertex;
  bool passed;
};

enum class EventKind {
  closed_response,      // interior sample answered with an action already closed
  finder_failure,       // degenerate side points or a mis-oriented search
  plane_through_anchor, // returned plane contains the region's interior point
  duplicate_plane,      // returned plane already bounds the region
  no_progress,          // returned plane cuts off no vertex
  plane_cap,            // more planes than the region can have facets
  budget_exhausted
};

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::closed_response: return "closed_response";
    case EventKind::finder_failure: return "finder_failure";
    case EventKind::plane_through_anchor: return "plane_through_anchor";
    case EventKind::duplicate_plane: return "duplicate_plane";
    case EventKind::no_progress: return "no_progress";
    case EventKind::plane_cap: return "plane_cap";
    case EventKind::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

struct LearnEvent {
  EventKind kind;
  Action action;
  std::string detail;
};

struct ClosedRegion {
  Action action;
  Polytope region;
  MixedStrategy interior;
  std::vector<Hyperplane> planes;  // in discovery order
};

struct LearnOutcome {
  MixedStrategy p_star = MixedStrategy::pure(1, 0);
  Rational value;
  Action response = 0;
  std::vector<ClosedRegion> regions;
  std::size_t query_count = 0;
  std::size_t finder_calls = 0;
  bool success = true;
  std::vector<VertexCheck> checks;
  std::vector<LearnEvent> events;
};

namespace detail {

/// Largest number of planes a region can need: one per other follower
/// action, twice that with leader-side splits.
inline std::size_t plane_cap(std::size_t n, Mode mode) { return mode == Mode::standard ? n - 1 : 2 * (n - 1); }

inline std::vector<Point> descending(const std::vector<Point>& vs) {
  std::vector<Point> out = vs;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace detail

/// Learns an optimal commitment from best-response queries alone. The
/// learner knows its own payoffs (`leader`) but sees the follower only
/// through the oracle.
inline LearnOutcome learn(QueryOracle& oracle, const Matrix& leader, const LearnerConfig& cfg, Rng& rng) {
  if (cfg.mode != oracle.mode()) throw domain_error("learner mode does not match the oracle mode");
  const LearnerParams lp = LearnerParams::of(oracle, cfg);
  if (leader.size() != lp.m || leader.front().size() != lp.n) throw domain_error("leader payoff shape mismatch");
  const SamplerOptions samp{cfg.precision, lp.payoff_bits};
  const FinderOptions fopt{cfg.precision, {}};
  const std::size_t start = oracle.query_count();

  LearnOutcome out;
  std::vector<bool> is_closed(lp.n, false);
  std::size_t resamples = 0;

  auto note = [&](EventKind k, Action a, std::string d) { out.events.push_back({k, a, std::move(d)}); };

  while (out.success) {
    std::vector<Polytope> cover;
    for (const auto& c : out.regions) cover.push_back(c.region);
    std::optional<MixedStrategy> anchor;
    try {
      anchor = sample_uncovered_interior(cover, lp.m, lp.delta, rng, samp);
    } catch (const fully_covered&) {
      break;
    }
    const Action target = oracle.query(*anchor);
    if (is_closed[target]) {
      note(EventKind::closed_response, target, "interior sample answered with a closed action");
      if (++resamples > cfg.resample_budget) {
        note(EventKind::budget_exhausted, target, "resample budget");
        out.success = false;
      }
      continue;
    }

    Polytope upper = Polytope::simplex(lp.m);
    std::vector<Hyperplane> planes;
    std::set<Point> passed;
    bool closed = false;
    while (out.success && !closed) {
      std::optional<Point> failing;
      for (const auto& v : detail::descending(upper.vertices())) {
        if (passed.count(v)) continue;
        const bool ok = check_vertex(oracle, v, *anchor, check_weight(lp, v, *anchor), target);
        out.checks.push_back({target, v, ok});
        if (!ok) {
          failing = v;
          break;
        }
        passed.insert(v);
      }
      if (!failing) {
        closed = true;
        break;
      }

      bool added = false;
      for (std::size_t attempt = 0; attempt < cfg.finder_retries && !added; ++attempt) {
        ++out.finder_calls;
        std::optional<FinderResult> found;
        try {
          found = find_hyperplane({target, upper, *anchor, *failing, lp.delta}, oracle, rng, fopt);
        } catch (const degenerate_geometry& e) {
          note(EventKind::finder_failure, target, e.what());
          continue;
        } catch (const orientation_error& e) {
          note(EventKind::finder_failure, target, e.what());
          continue;
        }
        const Rational side = found->plane.evaluate(anchor->span());
        if (side.is_zero()) {
          note(EventKind::plane_through_anchor, target, "");
          continue;
        }
        const Halfspace h(found->plane, side.sign() > 0 ? Side::at_least : Side::at_most);
        if (upper.has_constraint(h)) {
          note(EventKind::duplicate_plane, target, "");
          continue;
        }
        const auto& vs = upper.vertices();
        if (std::none_of(vs.begin(), vs.end(), [&](const Point& v) { return h.slack(v).sign() < 0; })) {
          note(EventKind::no_progress, target, "");
          continue;
        }
        upper = upper.intersect(h);
        planes.push_back(found->plane);
        added = true;
      }
      if (!added) {
        note(EventKind::budget_exhausted, target, "finder retries");
        out.success = false;
      } else if (planes.size() > detail::plane_cap(lp.n, cfg.mode)) {
        note(EventKind::plane_cap, target, std::to_string(planes.size()) + " planes");
        out.success = false;
      }
    }
    if (!closed) break;
    out.regions.push_back({target, upper, *anchor, std::move(planes)});
    is_closed[target] = true;
  }

  if (out.regions.empty()) throw retry_budget_exhausted("no follower action could be closed");

  // Leader utility at each candidate vertex under the follower's actual
  // (tie-broken) response; ties go to the lexicographically smallest vertex.
  std::set<Point> seen;
  bool have = false;
  for (const auto& c : out.regions) {
    for (const auto& v : c.region.vertices()) {
      if (!seen.insert(v).second) continue;
      MixedStrategy s(v);
      const Action a = oracle.query(s);
      Rational u;
      for (std::size_t i = 0; i < lp.m; ++i) u += v[i] * leader[i][a];
      if (!have || u > out.value || (u == out.value && s < out.p_star)) {
        out.p_star = s;
        out.value = u;
        out.response = a;
        have = true;
      }
    }
  }
  out.query_count = oracle.query_count() - start;
  return out;
}

inline LearnOutcome learn(QueryOracle& oracle, const Matrix& leader, const LearnerConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  return learn(oracle, leader, cfg, rng);
}

}  // namespace commitlearn
