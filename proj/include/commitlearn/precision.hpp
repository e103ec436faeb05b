#pragma once

#include <cstddef>
#include <span>

#include "commitlearn/errors.hpp"
#include "commitlearn/rational.hpp"

namespace commitlearn {

/// How perturbation sizes and search resolutions are chosen.
///
/// worst_case: constants, derived from bit-complexity bounds alone.
/// They are exact and correct but grow so fast that anything beyond tiny
/// instances (or m = 2) is out of reach.
///
/// certified: each constant is computed from the measured common denominators
/// of the points involved, using the fact that every separating hyperplane has
/// an integer normal after scaling by a common denominator below 2^(2mL), with
/// entries bounded by that scale. Every guarantee the worst-case constants give
/// still holds exactly; only the slack is gone.
enum class Precision { worst_case, certified };

inline const char* to_string(Precision p) { return p == Precision::worst_case ? "worst-case" : "certified"; }

namespace bounds {

/// ceil(log2(1/delta)) for delta in (0, 1).
inline std::size_t log2_inverse_ceil(const Rational& delta) {
  if (delta.sign() <= 0 || delta >= Rational(1)) throw domain_error("delta must lie in (0,1)");
  // smallest e with 2^e >= den/num
  const BigInt& num = delta.numerator();
  const BigInt& den = delta.denominator();
  std::size_t e = 0;
  BigInt lhs = num;
  while (lhs < den) {
    lhs <<= 1;
    ++e;
  }
  return e;
}

/// delta = zeta / (2 (n^2 + nm)^2 + n^3), the per-event failure budget.
inline Rational failure_delta(const Rational& zeta, std::size_t m, std::size_t n) {
  if (zeta.sign() <= 0 || zeta >= Rational(1)) throw domain_error("zeta must lie in (0,1)");
  const long nn = static_cast<long>(n);
  const long mm = static_cast<long>(m);
  const long q = nn * nn + nn * mm;
  return zeta / Rational(2 * q * q + nn * nn * nn);
}

/// Largest bit-complexity a sampled point may have: 40 m^3 L + 2 ceil(log2(1/delta)).
inline std::size_t sample_bits(std::size_t m, std::size_t payoff_bits, const Rational& delta) {
  return 40 * m * m * m * payoff_bits + 2 * log2_inverse_ceil(delta);
}

/// Halving stops once the interval is shorter than 2^-search_halvings.
inline std::size_t search_halvings(std::size_t m, std::size_t point_bits, std::size_t payoff_bits) {
  return 6 * m * (5 * point_bits + 8 * payoff_bits);
}

inline std::size_t stern_brocot_depth(std::size_t m, std::size_t point_bits, std::size_t payoff_bits) {
  return 3 * m * (5 * point_bits + 8 * payoff_bits);
}

/// Largest bit-complexity of a point returned by a search between endpoints
/// of bit-complexity point_bits.
inline std::size_t crossing_bits(std::size_t m, std::size_t point_bits, std::size_t payoff_bits) {
  return 24 * m * (3 * point_bits + 4 * payoff_bits);
}

/// log2 of an upper bound on any crossing denominator along a segment whose
/// endpoints have common denominators d1 and d2: the crossing parameter is
/// c.p1 / (c.p1 - c.p2) for an integer normal c with |c_i| <= Dc < 2^(2mL),
/// so its reduced denominator is below 2 Dc d1 d2 < 2^result.
inline std::size_t crossing_denominator_bits(std::size_t m, std::size_t payoff_bits, const BigInt& d1,
                                             const BigInt& d2) {
  return 1 + 2 * m * payoff_bits + integer_bits(d1) + integer_bits(d2);
}

/// 2^-(m(B+4L)+1) / divisor
inline Rational lemma_scale(std::size_t m, std::size_t point_bits, std::size_t payoff_bits, long divisor) {
  return pow2(-static_cast<long>(m * (point_bits + 4 * payoff_bits) + 1)) / Rational(divisor);
}

/// Side-point step in the worst-case setting: 2^-(m(B+4L)+1) / m.
inline Rational worst_case_step(std::size_t m, std::size_t crossing_point_bits, std::size_t payoff_bits) {
  return lemma_scale(m, crossing_point_bits, payoff_bits, static_cast<long>(m));
}

/// Side-point step from the crossing's common denominator d: any hyperplane
/// not through the crossing has |c.p| >= 1/(Dc d) there, and a step of size
/// s changes c.p by at most 2s, so s = 2^-(2mL + bits(d) + 1) < 1/(2 Dc d).
/// The same margin keeps the mirrored point inside the simplex.
inline Rational certified_step(std::size_t m, std::size_t payoff_bits, const BigInt& d) {
  return pow2(-static_cast<long>(2 * m * payoff_bits + integer_bits(d) + 1));
}

/// Vertex-check weight in the worst-case setting: 2^-(m(B+4L)+1) / (2m), strictly
/// inside the open interval the equivalence argument needs.
inline Rational worst_case_check_weight(std::size_t m, std::size_t point_bits, std::size_t payoff_bits) {
  return lemma_scale(m, point_bits, payoff_bits, static_cast<long>(2 * m));
}

/// Vertex-check weight from the vertex's common denominator d: a violated
/// constraint has c.v <= -1/(Dc d) and |c.p_int| <= 1, so any weight below
/// 1/(1 + Dc d) keeps the sign; 2^-(2mL + bits(d)) is such a weight.
inline Rational certified_check_weight(std::size_t m, std::size_t payoff_bits, const BigInt& d) {
  return pow2(-static_cast<long>(2 * m * payoff_bits + integer_bits(d)));
}

/// (d^3 2^(9 d^3 L + 4 d L))^-1
inline Rational worst_case_spread(std::size_t d, std::size_t payoff_bits) {
  const long e = static_cast<long>(9 * d * d * d * payoff_bits + 4 * d * payoff_bits);
  return pow2(-e) / Rational(static_cast<long>(d * d * d));
}

/// Largest power of two strictly below a positive bound.
inline Rational power_of_two_below(const Rational& bound) {
  if (bound.sign() <= 0) throw domain_error("power_of_two_below needs a positive bound");
  long e = static_cast<long>(integer_bits(bound.numerator())) - static_cast<long>(integer_bits(bound.denominator()));
  // 2^(e-1) < bound < 2^(e+1); step down until strictly below.
  Rational p = pow2(e + 1);
  while (p >= bound) p = p / Rational(2);
  return p;
}

/// ceil(sqrt(d) / delta), computed exactly.
inline BigInt grid_resolution(std::size_t d, const Rational& delta) {
  if (delta.sign() <= 0) throw domain_error("delta must be positive");
  // smallest M with (M a)^2 >= d b^2 where delta = a/b
  const BigInt& a = delta.numerator();
  const BigInt& b = delta.denominator();
  BigInt t = BigInt(static_cast<unsigned long>(d)) * b * b;
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  if (s * s < t) s += 1;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), s.get_mpz_t(), a.get_mpz_t());
  return q < 1 ? BigInt(1) : q;
}

}  // namespace bounds
}  // namespace commitlearn
