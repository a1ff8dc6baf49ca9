#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tpsimp/bipoly.hpp"
#include "tpsimp/ideal_pieces.hpp"
#include "tpsimp/rational.hpp"

namespace tpsimp {

// Variables in order s,t,u,v,X,Y,Z,W; one byte of exponent each.
using Mono8 = std::array<std::uint8_t, 8>;

/// Block order: grevlex on (s,t,u,v) first, ties broken by grevlex on
/// (X,Y,Z,W). Negative if a < b.
int compare_mono8(const Mono8& a, const Mono8& b);

/// Sparse polynomial in k[s,t,u,v,X,Y,Z,W]; terms sorted strictly
/// decreasing, no zero coefficients.
class MPoly8 {
 public:
  using Term = std::pair<Mono8, Rational>;

  MPoly8() = default;
  /// Sorts, merges equal monomials, drops zeros.
  explicit MPoly8(std::vector<Term> terms);
  static MPoly8 variable(int index);
  static MPoly8 constant(const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Mono8& lead_mono() const { return terms_.front().first; }
  const Rational& lead_coeff() const { return terms_.front().second; }
  /// True if no term involves s,t,u,v.
  bool free_of_params() const;
  int total_degree() const;

  MPoly8 monic() const;
  MPoly8 scaled(const Rational& c, const Mono8& m) const;

  friend MPoly8 operator+(const MPoly8& a, const MPoly8& b);
  friend MPoly8 operator-(const MPoly8& a, const MPoly8& b);
  friend MPoly8 operator*(const MPoly8& a, const MPoly8& b);
  friend bool operator==(const MPoly8&, const MPoly8&) = default;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

class StepCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full reduction of f modulo G.
MPoly8 normal_form(const MPoly8& f, const std::vector<MPoly8>& G);

MPoly8 s_polynomial(const MPoly8& f, const MPoly8& g);

/// Buchberger's algorithm, normal strategy (smallest lcm degree first, ties
/// by pair index), coprime-lead criterion only. `step_cap` bounds the number
/// of S-pair reductions. Returns the reduced monic basis.
std::vector<MPoly8> buchberger(const std::vector<MPoly8>& gens, std::size_t step_cap);

/// Every S-polynomial reduces to zero.
bool is_groebner_basis(const std::vector<MPoly8>& G);

struct EliminationResult {
  SurfForm H;
  std::size_t basis_size = 0;
  std::size_t eliminated_count = 0;
};

/// Implicit equation from <X-f0, Y-f1, Z-f2, W-f3> intersected with
/// k[X,Y,Z,W], computed on the chart t = 1. The lowest-degree eliminated
/// element vanishing on the image is returned, normalized.
/// Throws StepCapExceeded, or std::runtime_error if nothing suitable is
/// eliminated.
EliminationResult eliminate_params(const std::array<BiForm, 4>& f, std::size_t step_cap);

}  // namespace tpsimp
