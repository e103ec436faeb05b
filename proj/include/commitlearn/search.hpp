#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "commitlearn/errors.hpp"
#include "commitlearn/game.hpp"
#include "commitlearn/oracle.hpp"
#include "commitlearn/precision.hpp"

namespace commitlearn {

/// Simplest rational in [lo, hi]: the first one met by mediant descent from
/// the pair 0/1, 1/1. Runs of steps in one direction are taken in a single
/// batch, so the cost is the number of continued-fraction terms. depth is a
/// bit-complexity budget: if the next mediant would exceed it before landing
/// in the interval, depth_exceeded is thrown.
inline Rational stern_brocot(const Rational& lo, const Rational& hi, std::size_t depth) {
  if (hi < lo) throw std::invalid_argument("stern_brocot: empty interval");
  if (lo.sign() < 0 || hi > Rational(1)) throw std::invalid_argument("stern_brocot: interval outside [0,1]");
  if (lo.is_zero()) return Rational(0);
  if (hi == Rational(1)) return Rational(1);

  BigInt a = 0, b = 1;  // left bound a/b < lo
  BigInt c = 1, d = 1;  // right bound c/d > hi
  const BigInt& lp = lo.numerator();
  const BigInt& lq = lo.denominator();
  const BigInt& hp = hi.numerator();
  const BigInt& hq = hi.denominator();
  BigInt k, num, den;
  while (true) {
    num = a + c;
    den = b + d;
    if (integer_bits(num) + integer_bits(den) > depth) {
      throw depth_exceeded("no rational of bit-complexity <= " + std::to_string(depth) + " in [" + lo.str() + ", " +
                           hi.str() + "]");
    }
    // mediant < lo  <=>  num * lq < lp * den
    if (num * lq < lp * den) {
      // largest k with (a + k c)/(b + k d) < lo:  k (c lq - lp d) < lp b - a lq
      BigInt top = lp * b - a * lq;
      BigInt bottom = c * lq - lp * d;
      mpz_cdiv_q(k.get_mpz_t(), top.get_mpz_t(), bottom.get_mpz_t());
      k -= 1;
      a += k * c;
      b += k * d;
    } else if (num * hq > hp * den) {
      // largest k with (c + k a)/(d + k b) > hi:  k (hp b - a hq) < c hq - hp d
      BigInt top = c * hq - hp * d;
      BigInt bottom = hp * b - a * hq;
      mpz_cdiv_q(k.get_mpz_t(), top.get_mpz_t(), bottom.get_mpz_t());
      k -= 1;
      c += k * a;
      d += k * b;
    } else {
      return Rational(num, den);
    }
  }
}

struct SearchOptions {
  Precision precision = Precision::certified;
};

struct SearchResult {
  MixedStrategy point;
  Rational lambda;         // along inside + lambda (outside - inside)
  Rational lower, upper;   // final bracket before reconstruction
  std::size_t queries = 0; // halving queries; endpoint responses are not counted here
  std::size_t halving_bound = 0;
  std::size_t depth = 0;
};

namespace detail {

/// Points on the segment from p1 to p2 at dyadic parameters k / 2^t, written
/// over the common scale D1 D2 2^t without reducing.
class DyadicSegment {
 public:
  DyadicSegment(const MixedStrategy& p1, const MixedStrategy& p2) {
    const ScaledStrategy s1 = ScaledStrategy::from(p1);
    const ScaledStrategy s2 = ScaledStrategy::from(p2);
    d1_ = s1.scale;
    d2_ = s2.scale;
    scale_ = s1.scale * s2.scale;
    for (std::size_t i = 0; i < s1.weights.size(); ++i) {
      base_.push_back(s1.weights[i] * s2.scale);
      step_.push_back(s2.weights[i] * s1.scale - base_.back());
    }
  }

  ScaledStrategy at(const BigInt& k, std::size_t t) const {
    ScaledStrategy s;
    s.scale = scale_;
    s.scale <<= static_cast<mp_bitcnt_t>(t);
    s.weights.resize(base_.size());
    for (std::size_t i = 0; i < base_.size(); ++i) {
      BigInt w = base_[i];
      w <<= static_cast<mp_bitcnt_t>(t);
      w += k * step_[i];
      s.weights[i] = std::move(w);
    }
    return s;
  }

  const BigInt& first_scale() const { return d1_; }
  const BigInt& second_scale() const { return d2_; }

 private:
  BigInt d1_, d2_, scale_;
  std::vector<BigInt> base_, step_;
};

inline Point interpolate(const MixedStrategy& p1, const MixedStrategy& p2, const Rational& lambda) {
  Point p(p1.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = p1[i] + lambda * (p2[i] - p1[i]);
  return p;
}

}  // namespace detail

/// Halving plus Stern-Brocot reconstruction on the segment from `inside`
/// (responds target) to `outside` (does not). No endpoint is queried; the
/// caller vouches for both responses.
///
/// worst_case: halve while the bracket exceeds 2^-6m(5B+8L), then reconstruct
/// with depth 3m(5B+8L). Rationals within that depth have denominators whose
/// product is below 2^6m(5B+8L), so a closed bracket of exactly that width
/// already holds at most one of them.
/// certified: with Q the crossing-denominator bound of the segment, halve
/// while the bracket exceeds 2^-2 log2 Q; two distinct rationals with
/// denominators below Q differ by more than that, so the simplest rational
/// left in the bracket is the crossing itself.
inline SearchResult binary_search_oriented(QueryOracle& oracle, Action target, const MixedStrategy& inside,
                                           const MixedStrategy& outside, const SearchOptions& opts = {}) {
  if (inside.size() != outside.size() || inside.size() != oracle.leader_actions()) {
    throw domain_error("search endpoints do not match the game dimension");
  }
  const std::size_t m = oracle.leader_actions();
  const std::size_t L = oracle.payoff_bits();
  const std::size_t point_bits = std::max(bit_complexity(inside.span()), bit_complexity(outside.span())).value;
  detail::DyadicSegment seg(inside, outside);

  SearchResult r{inside, Rational(0), Rational(0), Rational(1)};
  if (opts.precision == Precision::worst_case) {
    r.halving_bound = bounds::search_halvings(m, point_bits, L);
    r.depth = bounds::stern_brocot_depth(m, point_bits, L);
  } else {
    const std::size_t q = bounds::crossing_denominator_bits(m, L, seg.first_scale(), seg.second_scale());
    r.halving_bound = 2 * q;
    r.depth = 2 * q;
  }

  // Bracket [k/2^t, (k+1)/2^t]; the width is exactly 2^-t.
  BigInt k = 0;
  std::size_t t = 0;
  while (t < r.halving_bound) {
    const BigInt mid = 2 * k + 1;
    ++t;
    const Action a = oracle.query(seg.at(mid, t));
    ++r.queries;
    k = a == target ? mid : mid - 1;
  }
  r.lower = Rational(k, BigInt(1) << static_cast<mp_bitcnt_t>(t));
  r.upper = Rational(k + 1, BigInt(1) << static_cast<mp_bitcnt_t>(t));
  r.lambda = stern_brocot(r.lower, r.upper, r.depth);
  r.point = MixedStrategy(detail::interpolate(inside, outside, r.lambda));

  const std::size_t limit = bounds::crossing_bits(m, point_bits, L);
  if (bit_complexity(r.point.span()).value > limit) {
    throw assertion_violation("search result bit-complexity " + std::to_string(bit_complexity(r.point.span()).value) +
                              " exceeds 24m(3B+4L) = " + std::to_string(limit));
  }
  return r;
}

/// Search with known endpoint responses: orients the segment so the target
/// side comes first. Exactly one response must equal the target.
inline SearchResult binary_search(QueryOracle& oracle, Action target, const MixedStrategy& p1, Action r1,
                                  const MixedStrategy& p2, Action r2, const SearchOptions& opts = {}) {
  if ((r1 == target) == (r2 == target)) {
    throw orientation_error("exactly one search endpoint must respond with the target action");
  }
  return r1 == target ? binary_search_oriented(oracle, target, p1, p2, opts)
                      : binary_search_oriented(oracle, target, p2, p1, opts);
}

/// Search that first queries both endpoints (two extra queries on the meter).
inline SearchResult binary_search(QueryOracle& oracle, Action target, const MixedStrategy& p1,
                                  const MixedStrategy& p2, const SearchOptions& opts = {}) {
  const Action r1 = oracle.query(p1);
  const Action r2 = oracle.query(p2);
  return binary_search(oracle, target, p1, r1, p2, r2, opts);
}

}  // namespace commitlearn
