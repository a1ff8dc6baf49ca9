#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tpsimp/modp.hpp"
#include "tpsimp/rational.hpp"

namespace tpsimp {

/// Interpolation of a polynomial F(x,y,z) of total degree <= D from its
/// values on the lower set {(x_i, y_j, z_k) : i + j + k <= D}. The node
/// coordinates along each axis must be pairwise distinct; with that the
/// tensor divided differences are exactly the Newton coefficients, so the
/// grid is unisolvent.
class LowerSetInterpolator {
 public:
  LowerSetInterpolator(const PrimeField& f, int degree, std::array<std::vector<std::uint64_t>, 3> nodes);

  int degree() const { return d_; }
  const std::array<std::vector<std::uint64_t>, 3>& nodes() const { return nodes_; }

  /// Flat position of (i,j,k) in the value array (size (D+1)^3; only
  /// positions with i+j+k <= D are used).
  std::size_t pos(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)) * n_ + static_cast<std::size_t>(k);
  }
  std::size_t value_size() const { return n_ * n_ * n_; }

  /// Turns node values into monomial coefficients in place: afterwards
  /// v[pos(i,j,k)] is the coefficient of x^i y^j z^k.
  void solve(std::vector<std::uint64_t>& v) const;

 private:
  void newton_1d(std::vector<std::uint64_t>& v, int axis) const;
  void to_monomial_1d(std::vector<std::uint64_t>& v, int axis) const;

  const PrimeField& f_;
  int d_;
  std::size_t n_;
  std::array<std::vector<std::uint64_t>, 3> nodes_;
  // inv_diff_[axis][l][i] = 1 / (x_i - x_(i-l))
  std::array<std::vector<std::vector<std::uint64_t>>, 3> inv_diff_;
};

/// Incremental Chinese remaindering plus rational reconstruction of a vector
/// of rationals. Denominators found so far are tracked in a running lcm so
/// that most coefficients are recovered by one multiplication.
class RationalLifter {
 public:
  explicit RationalLifter(std::size_t n) : acc_(n), n_(n) {}

  void reset();
  void add_image(std::span<const std::uint64_t> residues, std::uint64_t p);
  const Integer& modulus() const { return modulus_; }
  std::size_t primes_used() const { return primes_; }

  /// Reconstructs every entry, or returns nullopt if some entry has no
  /// admissible reconstruction yet.
  std::optional<std::vector<Rational>> try_reconstruct();

 private:
  std::vector<Integer> acc_;
  Integer modulus_ = 0;
  std::size_t n_;
  std::size_t primes_ = 0;
  Integer den_lcm_ = 1;
  std::size_t last_failure_ = 0;
};

}  // namespace tpsimp
