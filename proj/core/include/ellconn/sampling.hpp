#pragma once

#include <cstdint>
#include <random>

#include "ellconn/rational.hpp"

namespace ellconn {

// Fixed seeds so every suite and the CLI selftest are reproducible.
inline constexpr std::uint64_t kSeedFamily = 0x9e3779b97f4a7c15ull;
inline constexpr std::uint64_t kSeedPar = 0xbf58476d1ce4e5b9ull;
inline constexpr std::uint64_t kSeedApp = 0x94d049bb133111ebull;
inline constexpr std::uint64_t kSeedSymplectic = 0xd6e8feb86659fd93ull;
inline constexpr std::uint64_t kSeedConservation = 0xa5a5a5a55a5a5a5aull;
inline constexpr std::uint64_t kSeedCurve = 0x123456789abcdef1ull;

/// Deterministic stream of small rationals.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform numerator in [-max_num, max_num], denominator in [1, max_den].
  Rational rational(long max_num = 12, long max_den = 8) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(gen_), den(gen_));
  }

  Rational nonzero_rational(long max_num = 12, long max_den = 8) {
    while (true) {
      Rational r = rational(max_num, max_den);
      if (!r.is_zero()) return r;
    }
  }

  /// A rational avoiding the listed values.
  template <class Seq>
  Rational rational_avoiding(const Seq& avoid, long max_num = 12, long max_den = 8) {
    while (true) {
      Rational r = rational(max_num, max_den);
      bool bad = false;
      for (const auto& a : avoid)
        if (r == a) bad = true;
      if (!bad) return r;
    }
  }

  long integer(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(gen_);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ellconn
