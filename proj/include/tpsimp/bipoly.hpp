#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tpsimp/rational.hpp"

namespace tpsimp {

/// Exponents of (s,t,u,v) or (X,Y,Z,W).
using Exponent4 = std::array<int, 4>;

struct Bidegree {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

/// Monomials of R_(i,j), ordered lex with s > t > u > v. Position of
/// s^(i-p) t^p u^(j-q) v^q is p*(j+1) + q.
struct MonomialBasis {
  Bidegree degree;
  std::vector<Exponent4> monomials;

  std::size_t size() const { return monomials.size(); }
  std::size_t index_of(const Exponent4& e) const;
};

MonomialBasis mono_basis(int i, int j);

inline std::size_t bi_index(Bidegree d, int et, int ev) {
  return static_cast<std::size_t>(et) * static_cast<std::size_t>(d.j + 1) + static_cast<std::size_t>(ev);
}

inline std::size_t bi_dim(Bidegree d) {
  return d.i < 0 || d.j < 0 ? 0 : static_cast<std::size_t>(d.i + 1) * static_cast<std::size_t>(d.j + 1);
}

/// Bihomogeneous form of fixed bidegree, stored densely against mono_basis.
class BiForm {
 public:
  BiForm() = default;
  explicit BiForm(Bidegree d) : deg_(d), c_(bi_dim(d)) {}
  BiForm(Bidegree d, std::vector<Rational> coeffs);

  static BiForm monomial(const Exponent4& e, Rational c = 1);
  /// Parses the polynomial grammar. The bidegree is inferred from the terms;
  /// `expected` is required for the zero polynomial and checked otherwise.
  static BiForm parse(std::string_view text);
  static BiForm parse(std::string_view text, Bidegree expected);

  Bidegree bidegree() const { return deg_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  std::vector<Rational>& coeffs() { return c_; }
  Rational coeff(const Exponent4& e) const;

  bool is_zero() const;
  std::size_t num_terms() const;
  /// Nonzero terms in canonical order.
  std::vector<std::pair<Exponent4, Rational>> terms() const;

  Rational evaluate(const Rational& s, const Rational& t, const Rational& u, const Rational& v) const;

  BiForm& operator+=(const BiForm& o);
  BiForm& operator-=(const BiForm& o);
  BiForm& operator*=(const Rational& c);
  friend BiForm operator+(BiForm a, const BiForm& b) { return a += b; }
  friend BiForm operator-(BiForm a, const BiForm& b) { return a -= b; }
  friend BiForm operator-(BiForm a) { return a *= Rational(-1); }
  friend BiForm operator*(BiForm a, const Rational& c) { return a *= c; }
  friend BiForm operator*(const Rational& c, BiForm a) { return a *= c; }
  friend BiForm operator*(const BiForm& a, const BiForm& b);
  friend bool operator==(const BiForm&, const BiForm&) = default;

  std::string to_string() const;

 private:
  Bidegree deg_{};
  std::vector<Rational> c_;
};

/// Index of a degree-d monomial in k[X,Y,Z,W] under grlex X > Y > Z > W.
std::size_t surf_index(int d, const Exponent4& e);
std::size_t surf_dim(int d);
std::vector<Exponent4> surf_monomials(int d);

/// Homogeneous form in X,Y,Z,W, stored densely in grlex order.
class SurfForm {
 public:
  SurfForm() = default;
  explicit SurfForm(int degree) : d_(degree), c_(surf_dim(degree)) {}
  SurfForm(int degree, std::vector<Rational> coeffs);

  static SurfForm parse(std::string_view text);
  static SurfForm parse(std::string_view text, int expected_degree);
  /// Linear form c0 X + c1 Y + c2 Z + c3 W.
  static SurfForm linear(const std::array<Rational, 4>& c);

  int degree() const { return d_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  std::vector<Rational>& coeffs() { return c_; }
  Rational coeff(const Exponent4& e) const { return c_[surf_index(d_, e)]; }
  Rational& coeff_ref(const Exponent4& e) { return c_[surf_index(d_, e)]; }

  bool is_zero() const;
  std::size_t num_terms() const;
  std::vector<std::pair<Exponent4, Rational>> terms() const;
  /// First nonzero coefficient in grlex order (zero for the zero form).
  Rational leading_coeff() const;

  Rational evaluate(std::span<const Rational> xyzw) const;

  /// Integer coefficients, content one, positive leading coefficient.
  SurfForm normalized() const;
  bool is_normalized() const;
  /// True iff this = c * other for some nonzero rational c.
  bool proportional_to(const SurfForm& other) const;

  SurfForm& operator+=(const SurfForm& o);
  SurfForm& operator*=(const Rational& c);
  friend SurfForm operator+(SurfForm a, const SurfForm& b) { return a += b; }
  friend SurfForm operator*(SurfForm a, const Rational& c) { return a *= c; }
  friend SurfForm operator*(const SurfForm& a, const SurfForm& b);
  friend bool operator==(const SurfForm&, const SurfForm&) = default;

  std::string to_string() const;

 private:
  int d_ = 0;
  std::vector<Rational> c_;
};

/// H(f0,f1,f2,f3), of bidegree (d*a, d*b) when all f have bidegree (a,b).
/// Throws std::invalid_argument on a bidegree mismatch.
BiForm substitute_surface(const SurfForm& H, std::span<const BiForm> f);

/// Sparse polynomial text, as produced by the parser before typing.
struct ParsedPoly {
  bool surface_alphabet = false;  ///< X,Y,Z,W rather than s,t,u,v
  bool has_variables = false;
  std::vector<std::pair<Exponent4, Rational>> terms;  ///< merged, nonzero
};

/// Grammar: terms joined by '+'/'-'; a term is a rational coefficient and/or
/// '*'-separated powers such as s^2*t*u. Whitespace is ignored. Mixing the
/// two alphabets in one polynomial is rejected. Throws std::invalid_argument.
ParsedPoly parse_polynomial(std::string_view text);

/// Formats terms in the order given (used by both form types).
std::string format_terms(const std::vector<std::pair<Exponent4, Rational>>& terms, bool surface_alphabet);

}  // namespace tpsimp
