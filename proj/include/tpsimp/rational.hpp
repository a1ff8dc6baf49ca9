#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace tpsimp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "7", "-3", "22/7" (whitespace not allowed). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Least common multiple of the denominators.
Integer denominator_lcm(const std::vector<Rational>& values);

/// gcd of the numerators of integral values; 0 when all are zero.
Integer content(const std::vector<Integer>& values);

/// Approximate bit length of |z| (0 for zero).
std::size_t bit_length(const Integer& z);

/// Seeded generator. The engine output sequence is fixed by the standard, and
/// bounded draws use rejection sampling, so results do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tpsimp
