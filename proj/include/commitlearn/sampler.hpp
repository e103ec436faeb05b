#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "commitlearn/errors.hpp"
#include "commitlearn/game.hpp"
#include "commitlearn/geometry.hpp"
#include "commitlearn/precision.hpp"
#include "commitlearn/random.hpp"

namespace commitlearn {

struct SamplerOptions {
  Precision precision = Precision::certified;
  // L; only the worst-case spread needs it.
  std::size_t payoff_bits = 0;
  // Redraws allowed when a point fails the interiority post-check.
  std::size_t attempts = 16;
};

/// Everything a draw depends on besides the grid offsets.
struct SamplerParams {
  std::size_t d = 0;
  Rational delta;
  Rational spread;
  BigInt resolution;
  std::optional<std::size_t> facet;
  Point anchor;
  // Coordinates in assignment order: the first d-1 receive offsets, the last
  // one absorbs the remainder so the point sums to one.
  std::vector<std::size_t> free;
};

struct Draw {
  MixedStrategy point;
  std::vector<BigInt> ticks;  // grid offsets x_l = ticks[l] / resolution
};

/// m for a full-dimensional polytope, m-1 for a simplex facet.
inline std::size_t sample_dimension(const Polytope& poly) {
  if (poly.facet_index()) return poly.ambient_dimension() - 1;
  if (!poly.equalities().empty()) throw degenerate_geometry("sampling supports the simplex facets only");
  return poly.ambient_dimension();
}

/// The first d linearly independent vectors in the given order.
inline std::vector<Point> independent_vertices(std::span<const Point> vertices, std::size_t d) {
  std::vector<Point> picked;
  for (const auto& v : vertices) {
    picked.push_back(v);
    if (!linearly_independent(picked)) picked.pop_back();
    if (picked.size() == d) return picked;
  }
  throw insufficient_vertices("found " + std::to_string(picked.size()) + " linearly independent vertices, need " +
                              std::to_string(d));
}

inline Point average(std::span<const Point> points) {
  Point s(points.front().size(), Rational(0));
  for (const auto& p : points) {
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += p[i];
  }
  const Rational k(static_cast<long>(points.size()));
  for (auto& q : s) q /= k;
  return s;
}

/// Average of the first d linearly independent vertices of P (vertex order).
inline MixedStrategy interior_anchor(const Polytope& poly, std::size_t d) {
  const auto picked = independent_vertices(poly.vertices(), d);
  return MixedStrategy(average(picked));
}

namespace detail {

inline std::vector<std::size_t> free_coordinates(std::size_t m, std::optional<std::size_t> facet) {
  std::vector<std::size_t> f;
  for (std::size_t k = 0; k < m; ++k) {
    if (!facet || k != *facet) f.push_back(k);
  }
  return f;
}

/// Sum over perturbed coordinates of |a_k - a_last|: the most a constraint
/// value can move per unit of spread.
inline Rational sensitivity(const Point& a, const std::vector<std::size_t>& free) {
  Rational s;
  const Rational& last = a[free.back()];
  for (std::size_t l = 0; l + 1 < free.size(); ++l) s += abs(a[free[l]] - last);
  return s;
}

}  // namespace detail

/// Spread and resolution for sampling P around the anchor of the given vertices.
inline SamplerParams sampler_params(const Polytope& poly, std::span<const Point> anchor_vertices,
                                    const Rational& delta, const SamplerOptions& opts = {}) {
  if (delta.sign() <= 0 || delta >= Rational(1)) throw domain_error("delta must lie in (0,1)");
  SamplerParams sp;
  sp.d = sample_dimension(poly);
  sp.delta = delta;
  sp.facet = poly.facet_index();
  sp.anchor = average(independent_vertices(anchor_vertices, sp.d));
  sp.free = detail::free_coordinates(poly.ambient_dimension(), sp.facet);
  sp.resolution = bounds::grid_resolution(sp.d, delta);

  if (opts.precision == Precision::worst_case) {
    if (opts.payoff_bits == 0) throw domain_error("worst-case spread needs the payoff bit-complexity");
    sp.spread = bounds::worst_case_spread(sp.d, opts.payoff_bits);
    return sp;
  }

  std::optional<Rational> limit;
  for (const auto& h : poly.constraints()) {
    const Rational slack = h.slack(sp.anchor);
    const Rational sens = detail::sensitivity(h.inward_normal(), sp.free);
    if (slack.sign() < 0) throw assertion_violation("sampling anchor violates a constraint");
    if (sens.is_zero()) continue;
    if (slack.is_zero()) throw assertion_violation("sampling anchor lies on a non-implicit constraint");
    const Rational r = slack / sens;
    if (!limit || r < *limit) limit = r;
  }
  sp.spread = limit ? bounds::power_of_two_below(*limit) : Rational(1);
  return sp;
}

/// Grid assignment: offset the first d-1 free coordinates by
/// spread * ticks_l / resolution, keep the facet coordinate at zero and set
/// the last free coordinate so the entries sum to one.
inline Point embed(const SamplerParams& sp, std::span<const BigInt> ticks) {
  if (ticks.size() + 1 != sp.d) throw std::invalid_argument("embed: expected d-1 grid offsets");
  Point p = sp.anchor;
  if (sp.facet) p[*sp.facet] = 0;
  const Rational step = sp.spread / Rational(sp.resolution);
  Rational rest(1);
  for (std::size_t l = 0; l + 1 < sp.free.size(); ++l) {
    const std::size_t k = sp.free[l];
    p[k] = sp.anchor[k] + step * Rational(ticks[l]);
    rest -= p[k];
  }
  p[sp.free.back()] = rest;
  return p;
}

/// Every constraint that is not implicit holds strictly.
inline bool strictly_inside(const Polytope& poly, const SamplerParams& sp, std::span<const Rational> p) {
  Rational s;
  for (const auto& q : p) s += q;
  if (s != Rational(1)) return false;
  for (const auto& h : poly.constraints()) {
    const Rational slack = h.slack(p);
    if (slack.sign() > 0) continue;
    if (slack.sign() < 0) return false;
    // Zero slack is fine only for constraints the perturbation never moves
    // and the anchor already meets with equality.
    if (!detail::sensitivity(h.inward_normal(), sp.free).is_zero() || !h.slack(sp.anchor).is_zero()) return false;
  }
  for (const auto& e : poly.equalities()) {
    if (!e.contains(p)) return false;
  }
  return true;
}

inline Draw sample_with(const Polytope& poly, const SamplerParams& sp, Rng& rng, std::size_t attempts) {
  for (std::size_t t = 0; t < std::max<std::size_t>(attempts, 1); ++t) {
    std::vector<BigInt> ticks;
    for (std::size_t l = 0; l + 1 < sp.d; ++l) ticks.push_back(rng.uniform(-sp.resolution, sp.resolution));
    Point p = embed(sp, ticks);
    if (strictly_inside(poly, sp, p)) return {MixedStrategy(std::move(p)), std::move(ticks)};
  }
  throw assertion_violation("sampled point left the polytope interior on every attempt");
}

/// Interior sample of P using the given vertex set for the anchor, for
/// polytopes whose vertices the caller already knows.
inline Draw sample_int_draw(const Polytope& poly, std::span<const Point> anchor_vertices, const Rational& delta,
                            Rng& rng, const SamplerOptions& opts = {}) {
  return sample_with(poly, sampler_params(poly, anchor_vertices, delta, opts), rng, opts.attempts);
}

inline Draw sample_int_draw(const Polytope& poly, const Rational& delta, Rng& rng, const SamplerOptions& opts = {}) {
  return sample_int_draw(poly, poly.vertices(), delta, rng, opts);
}

inline MixedStrategy sample_int(const Polytope& poly, const Rational& delta, Rng& rng,
                                const SamplerOptions& opts = {}) {
  return sample_int_draw(poly, delta, rng, opts).point;
}

inline MixedStrategy sample_int(const Polytope& poly, std::span<const Point> anchor_vertices, const Rational& delta,
                                Rng& rng, const SamplerOptions& opts = {}) {
  return sample_int_draw(poly, anchor_vertices, delta, rng, opts).point;
}

}  // namespace commitlearn
