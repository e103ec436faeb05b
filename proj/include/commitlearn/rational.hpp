#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commitlearn/errors.hpp"

namespace commitlearn {

using BigInt = mpz_class;

/// Number of bits a value occupies: numerator bits plus denominator bits.
struct BitComplexity {
  std::size_t value = 0;

  friend constexpr auto operator<=>(BitComplexity, BitComplexity) = default;
};

/// Bits of an integer magnitude: ceil(log2(|z|+1)), with zero taking one bit.
/// The sign is not counted.
inline std::size_t integer_bits(const BigInt& z) {
  if (z == 0) return 1;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Two equal values have identical representations.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}                    // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}                   // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : q_(v) {}          // NOLINT(google-explicit-constructor)

  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "a", "-a/b" or a finite decimal such as "0.125".
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw parse_error("empty rational literal");
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac = s.size() - dot - 1;
      BigInt den = 1;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
      return Rational(parse_integer(digits), den);
    }
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt den = parse_integer(s.substr(slash + 1));
      if (den == 0) throw parse_error("zero denominator in '" + s + "'");
      return Rational(parse_integer(s.substr(0, slash)), den);
    }
    return Rational(parse_integer(s));
  }

  static BigInt parse_integer(const std::string& s) {
    BigInt z;
    if (s.empty() || z.set_str(s, 10) != 0) throw parse_error("malformed integer literal '" + s + "'");
    return z;
  }

  const BigInt& numerator() const { return q_.get_num(); }
  const BigInt& denominator() const { return q_.get_den(); }
  const mpq_class& value() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  Rational operator-() const { return Rational(mpq_class(-q_), Canonical{}); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string str() const { return q_.get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct Canonical {};
  Rational(mpq_class q, Canonical) : q_(std::move(q)) {}

  mpq_class q_;
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

/// 2^e for a signed exponent.
inline Rational pow2(long e) {
  BigInt p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

inline BitComplexity bit_complexity(const Rational& q) {
  return {integer_bits(q.numerator()) + integer_bits(q.denominator())};
}

/// Bit-complexity of a vector: the maximum over its entries.
inline BitComplexity bit_complexity(std::span<const Rational> v) {
  BitComplexity b{0};
  for (const auto& q : v) b = std::max(b, bit_complexity(q));
  return b;
}

/// Least common multiple of the denominators (the smallest common denominator).
inline BigInt common_denominator(std::span<const Rational> v) {
  BigInt l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.denominator().get_mpz_t());
  return l;
}

/// Exact sum of at least two rationals of bit-complexity <= bound, checked
/// against the worst-case growth: at most 4B bits for two terms, 3mB for
/// m > 2 terms, and a nonzero result no smaller than 2^(-Bm) in magnitude.
inline Rational checked_sum(std::span<const Rational> qs, BitComplexity bound) {
  if (qs.size() < 2) throw std::invalid_argument("checked_sum needs at least two terms");
  for (const auto& q : qs) {
    if (bit_complexity(q) > bound) throw std::invalid_argument("checked_sum term exceeds the bit bound");
  }
  Rational sum;
  for (const auto& q : qs) sum += q;

  const std::size_t m = qs.size();
  const std::size_t limit = m == 2 ? 4 * bound.value : 3 * m * bound.value;
  if (bit_complexity(sum).value > limit) {
    throw assertion_violation("sum bit-complexity " + std::to_string(bit_complexity(sum).value) +
                              " exceeds " + std::to_string(limit));
  }
  if (!sum.is_zero() && abs(sum) < pow2(-static_cast<long>(bound.value * m))) {
    throw assertion_violation("nonzero sum below 2^(-Bm)");
  }
  return sum;
}

}  // namespace commitlearn
