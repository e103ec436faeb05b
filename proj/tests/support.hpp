#pragma once

#include <initializer_list>
#include <utility>

#include "commitlearn/commitlearn.hpp"

namespace cl = commitlearn;

inline cl::Rational Q(long num, long den = 1) { return cl::Rational(cl::BigInt(num), cl::BigInt(den)); }

inline cl::Point P(std::initializer_list<std::pair<long, long>> xs) {
  cl::Point p;
  for (auto [a, b] : xs) p.push_back(Q(a, b));
  return p;
}

inline cl::Point ints(std::initializer_list<long> xs) {
  cl::Point p;
  for (long x : xs) p.push_back(Q(x));
  return p;
}

inline cl::MixedStrategy S(std::initializer_list<std::pair<long, long>> xs) { return cl::MixedStrategy(P(xs)); }

/// Random rational in [-1, 1] with a denominator below 2^bits.
inline cl::Rational random_rational(cl::Rng& rng, unsigned bits, bool nonnegative = false) {
  const cl::BigInt den = rng.uniform(1, (cl::BigInt(1) << bits) - 1);
  const cl::BigInt num = rng.uniform(nonnegative ? cl::BigInt(0) : cl::BigInt(-den), den);
  return cl::Rational(num, den);
}
