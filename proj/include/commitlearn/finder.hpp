#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "commitlearn/errors.hpp"
#include "commitlearn/game.hpp"
#include "commitlearn/geometry.hpp"
#include "commitlearn/oracle.hpp"
#include "commitlearn/precision.hpp"
#include "commitlearn/random.hpp"
#include "commitlearn/sampler.hpp"
#include "commitlearn/search.hpp"

namespace commitlearn {

struct FinderContext {
  Action target;
  Polytope upper;           // current upper bound of the target's region
  MixedStrategy interior;   // responds target, interior to its region
  Point vertex;             // vertex of `upper` whose check failed
  Rational delta;
};

struct SidePointPair {
  MixedStrategy plus;
  MixedStrategy minus;
  std::size_t facet;
};

struct RoutedPair {
  MixedStrategy target_side;
  MixedStrategy other_side;
};

/// The queried point joins the target's set when it responded with the
/// target; its mirror goes to the other set, and vice versa.
inline RoutedPair route_side_points(const SidePointPair& pair, Action response_plus, Action target) {
  if (response_plus == target) return {pair.plus, pair.minus};
  return {pair.minus, pair.plus};
}

/// Draws a point from the facet {p_i = 0} of the simplex.
using FacetSampler = std::function<MixedStrategy(std::size_t facet, Rng&)>;

struct FinderOptions {
  Precision precision = Precision::certified;
  // Replaces the facet draws; tests use it to force degenerate side points.
  FacetSampler facet_sampler;
};

struct FinderResult {
  Hyperplane plane;
  MixedStrategy crossing;          // first point found on the plane
  Rational step;                   // size of the side-point offsets
  std::vector<SidePointPair> pairs;
  std::vector<Action> plus_responses;
  std::vector<MixedStrategy> plane_points;  // the m-1 points the plane is built from
  std::size_t queries = 0;
};

namespace detail {

inline MixedStrategy offset(const MixedStrategy& center, const MixedStrategy& toward, const Rational& step, int sign) {
  Point p(center.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational d = step * (toward[i] - center[i]);
    p[i] = sign > 0 ? center[i] + d : center[i] - d;
  }
  return MixedStrategy(std::move(p));
}

}  // namespace detail

/// Finds one separating hyperplane of the target's region: a crossing on the
/// region boundary from a random segment, then m-1 further crossings between
/// side points scattered around it, spanning the plane.
inline FinderResult find_hyperplane(const FinderContext& ctx, QueryOracle& oracle, Rng& rng,
                                    const FinderOptions& opts = {}) {
  const std::size_t m = oracle.leader_actions();
  const std::size_t L = oracle.payoff_bits();
  const std::size_t before = oracle.query_count();
  const SearchOptions sopt{opts.precision};
  const SamplerOptions samp{opts.precision, L};

  // Segment through the region boundary: sample -> failing vertex when the
  // sample is inside, sample -> known interior point otherwise.
  const MixedStrategy p = sample_int(ctx.upper, ctx.delta, rng, samp);
  const Action rp = oracle.query(p);
  SearchResult first = rp == ctx.target
                           ? binary_search_oriented(oracle, ctx.target, p, MixedStrategy(ctx.vertex), sopt)
                           : binary_search_oriented(oracle, ctx.target, ctx.interior, p, sopt);

  FinderResult out{Hyperplane(unit_vector(m, 0), Rational(0)), first.point, Rational(0), {}, {}, {}};
  const MixedStrategy& center = first.point;

  if (m == 2) {
    // The plane is a line through the origin; the crossing alone fixes it.
    const Point pts[] = {center.probabilities()};
    auto h = hyperplane_from_points(pts, m);
    if (!h) throw degenerate_geometry("crossing is the origin");
    out.plane = *h;
    out.plane_points.push_back(center);
    out.queries = oracle.query_count() - before;
    return out;
  }

  out.step = opts.precision == Precision::worst_case
                 ? bounds::worst_case_step(m, bit_complexity(center.span()).value, L)
                 : bounds::certified_step(m, L, common_denominator(center.span()));

  std::vector<MixedStrategy> target_side, other_side;
  std::vector<std::size_t> target_facet, other_facet;
  for (std::size_t i = 0; i < m; ++i) {
    const MixedStrategy q = opts.facet_sampler ? opts.facet_sampler(i, rng)
                                               : sample_int(Polytope::simplex_facet(m, i), ctx.delta, rng, samp);
    SidePointPair pair{detail::offset(center, q, out.step, +1), detail::offset(center, q, out.step, -1), i};
    const Action r = oracle.query(pair.plus);
    auto routed = route_side_points(pair, r, ctx.target);
    target_side.push_back(std::move(routed.target_side));
    other_side.push_back(std::move(routed.other_side));
    target_facet.push_back(i);
    other_facet.push_back(i);
    out.pairs.push_back(std::move(pair));
    out.plus_responses.push_back(r);
  }

  // A pair and its own mirror meet exactly at the first crossing, so only
  // points from different facets are combined. Crossings are kept when they
  // raise the rank of the collected set.
  std::vector<Point> points;
  for (std::size_t a = 0; a < target_side.size() && points.size() + 1 < m; ++a) {
    for (std::size_t b = 0; b < other_side.size() && points.size() + 1 < m; ++b) {
      if (target_facet[a] == other_facet[b]) continue;
      SearchResult s = binary_search_oriented(oracle, ctx.target, target_side[a], other_side[b], sopt);
      points.push_back(s.point.probabilities());
      if (!linearly_independent(points)) {
        points.pop_back();
        continue;
      }
      out.plane_points.push_back(std::move(s.point));
    }
  }
  out.queries = oracle.query_count() - before;
  if (points.size() + 1 < m) throw degenerate_geometry("side points do not span a hyperplane");
  auto h = hyperplane_from_points(points, m);
  if (!h) throw degenerate_geometry("crossings are linearly dependent");
  out.plane = *h;
  return out;
}

}  // namespace commitlearn
