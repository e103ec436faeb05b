#pragma once

#include <cstdint>
#include <random>

#include "commitlearn/rational.hpp"

namespace commitlearn {

/// Seeded generator. The engine is std::mt19937_64, whose output sequence is
/// fixed by the standard; ranges are mapped by rejection so draws are the same
/// on every platform (std::uniform_int_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw domain_error("empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform integer in [lo, hi].
  BigInt uniform(const BigInt& lo, const BigInt& hi) {
    if (hi < lo) throw domain_error("empty range");
    const BigInt span = hi - lo + 1;
    if (span.fits_ulong_p() && span.get_ui() != 0) return lo + BigInt(static_cast<unsigned long>(below(span.get_ui())));
    // Draw whole 64-bit words until the value falls in the largest multiple of span.
    const std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    BigInt top = 1;
    top <<= static_cast<mp_bitcnt_t>(64 * words);
    const BigInt limit = top - top % span;
    BigInt x;
    do {
      x = 0;
      for (std::size_t w = 0; w < words; ++w) {
        x <<= 64;
        x += BigInt(static_cast<unsigned long>(next()));
      }
    } while (x >= limit);
    return lo + x % span;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace commitlearn
