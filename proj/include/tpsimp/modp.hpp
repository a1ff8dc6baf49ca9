#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tpsimp/rational.hpp"

namespace tpsimp {

/// Arithmetic modulo an odd prime p < 2^62 in Montgomery representation.
/// Elements are stored as x*2^64 mod p; use `from_u64`/`to_u64` at the edges.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t from_u64(std::uint64_t x) const { return mul(x % p_, r2_); }
  std::uint64_t to_u64(std::uint64_t a) const { return reduce(a); }
  std::uint64_t from_int(const Integer& z) const;
  /// Fails when p divides the denominator.
  std::optional<std::uint64_t> from_rational(const Rational& q) const;

  std::uint64_t zero() const { return 0; }
  std::uint64_t one() const { return one_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Inverse of a nonzero element.
  std::uint64_t inv(std::uint64_t a) const;

 private:
  std::uint64_t reduce(unsigned __int128 t) const {
    std::uint64_t m = static_cast<std::uint64_t>(t) * pinv_neg_;
    unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * p_) >> 64;
    std::uint64_t r = static_cast<std::uint64_t>(u);
    return r >= p_ ? r - p_ : r;
  }

  std::uint64_t p_;
  std::uint64_t pinv_neg_;  // -p^{-1} mod 2^64
  std::uint64_t r2_;        // 2^128 mod p
  std::uint64_t one_;       // 2^64 mod p
};

bool is_prime_u64(std::uint64_t n);

/// Deterministic descending sequence of primes below 2^62.
class PrimeSequence {
 public:
  std::uint64_t next();

 private:
  std::uint64_t cursor_ = (std::uint64_t{1} << 62) - 1;
};

/// Determinant of a square matrix of field elements (row-major, destroyed).
std::uint64_t det_mod(const PrimeField& f, std::span<std::uint64_t> a, std::size_t n);

/// Rank of an r x c matrix of field elements (row-major, destroyed).
std::size_t rank_mod(const PrimeField& f, std::span<std::uint64_t> a, std::size_t rows, std::size_t cols);

/// Chinese remaindering of a residue vector into an accumulated image modulo M.
/// On return `acc` holds residues modulo M*p and `modulus` is updated.
void crt_accumulate(std::vector<Integer>& acc, Integer& modulus, std::span<const std::uint64_t> residues,
                    std::uint64_t p);

/// Rational reconstruction of u mod m with |num|, den <= sqrt(m/2).
std::optional<Rational> rational_reconstruct(const Integer& u, const Integer& m);

}  // namespace tpsimp
