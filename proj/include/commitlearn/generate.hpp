#pragma once

#include <cstddef>
#include <cstdint>

#include "commitlearn/errors.hpp"
#include "commitlearn/game.hpp"
#include "commitlearn/random.hpp"

namespace commitlearn {

/// Dyadic exponent used for a bit budget: payoffs k/2^b have bit-complexity
/// at most 2b+1, so b = (bits-1)/2 keeps every entry within the budget.
inline std::size_t dyadic_exponent(std::size_t bits) { return (bits - 1) / 2; }

namespace detail {

inline Matrix random_matrix(std::size_t m, std::size_t n, std::size_t b, Rng& rng) {
  const BigInt den = BigInt(1) << static_cast<mp_bitcnt_t>(b);
  Matrix a(m, Point(n));
  for (auto& row : a) {
    for (auto& q : row) q = Rational(rng.uniform(0, den), den);
  }
  return a;
}

}  // namespace detail

/// Random game with payoffs k/2^b, k uniform in [0, 2^b]; leader matrix drawn
/// first, then the follower matrix, both row-major.
inline GameInstance generate_random(std::size_t m, std::size_t n, std::size_t bits, std::uint64_t seed) {
  if (bits < 2) throw domain_error("payoff bit budget must be at least 2");
  if (m == 0 || n == 0) throw domain_error("game needs at least one action per player");
  Rng rng(seed);
  const std::size_t b = dyadic_exponent(bits);
  Matrix leader = detail::random_matrix(m, n, b, rng);
  Matrix follower = detail::random_matrix(m, n, b, rng);
  return GameInstance(std::move(leader), std::move(follower));
}

/// Random game in which one follower column is copied onto another, with
/// the two leader columns redrawn until they differ.
inline GameInstance generate_with_equivalent_actions(std::size_t m, std::size_t n, std::size_t bits,
                                                     std::uint64_t seed) {
  if (n < 2) throw domain_error("equivalent actions need at least two follower actions");
  if (bits < 2) throw domain_error("payoff bit budget must be at least 2");
  Rng rng(seed);
  const std::size_t b = dyadic_exponent(bits);
  Matrix leader = detail::random_matrix(m, n, b, rng);
  Matrix follower = detail::random_matrix(m, n, b, rng);
  const std::size_t j = rng.below(n);
  std::size_t k = rng.below(n - 1);
  if (k >= j) ++k;
  for (std::size_t i = 0; i < m; ++i) follower[i][k] = follower[i][j];
  const BigInt den = BigInt(1) << static_cast<mp_bitcnt_t>(b);
  auto same = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      if (leader[i][j] != leader[i][k]) return false;
    }
    return true;
  };
  while (same()) {
    for (std::size_t i = 0; i < m; ++i) leader[i][k] = Rational(rng.uniform(0, den), den);
  }
  return GameInstance(std::move(leader), std::move(follower));
}

/// Three-by-three game whose follower utilities are p2, p1, p3 for actions
/// 1, 2, 3, with identity leader payoffs.
inline GameInstance counterexample_game() {
  auto row = [](int a, int b, int c) { return Point{Rational(a), Rational(b), Rational(c)}; };
  Matrix follower{row(0, 1, 0), row(1, 0, 0), row(0, 0, 1)};
  Matrix leader{row(1, 0, 0), row(0, 1, 0), row(0, 0, 1)};
  return GameInstance(std::move(leader), std::move(follower));
}

struct Segment {
  MixedStrategy from;
  MixedStrategy to;
};

/// (1/3 - eps, 1/3 + eps, 1/3) -> (1/2, 1/10, 2/5): starts next to the point
/// where all three regions meet.
inline Segment counterexample_segment(const Rational& eps) {
  const Rational third(BigInt(1), BigInt(3));
  return {MixedStrategy(Point{third - eps, third + eps, third}),
          MixedStrategy(Point{Rational(BigInt(1), BigInt(2)), Rational(BigInt(1), BigInt(10)),
                              Rational(BigInt(2), BigInt(5))})};
}

}  // namespace commitlearn
