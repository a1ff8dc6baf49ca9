#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tpsimp/modp.hpp"
#include "tpsimp/rational.hpp"

namespace tpsimp {

/// Dense univariate polynomial over Q, coefficients from low to high degree,
/// no trailing zeros (the zero polynomial is empty).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }

  UPoly derivative() const;
  UPoly monic() const;
  /// Quotient and remainder.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd (zero if both are zero).
UPoly gcd(UPoly a, UPoly b);

/// Yun's algorithm: f = lc * prod a_i^i with the a_i monic, square-free and
/// pairwise coprime. Returns (a_i, i) for the nonconstant factors.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f);

/// Largest e such that f = c * g^e (1 for square-free or constant f).
int perfect_power_exponent(const UPoly& f);

/// Degree of gcd(f, f') over F_p for a polynomial given by residues
/// (Montgomery form, low to high). Returns -1 if f is zero mod p.
int gcd_with_derivative_degree_mod(const PrimeField& F, std::vector<std::uint64_t> f);

}  // namespace tpsimp
