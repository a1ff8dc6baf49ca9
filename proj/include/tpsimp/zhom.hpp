#pragma once

#include <cstddef>
#include <vector>

#include "tpsimp/bipoly.hpp"
#include "tpsimp/rational.hpp"

namespace tpsimp {

/// Dense homogeneous form in X,Y,Z,W with integer coefficients, indexed like
/// SurfForm. Used by the fraction-free symbolic determinant.
struct ZHom {
  int d = 0;
  std::vector<Integer> c;

  static ZHom zero(int d);
  static ZHom one();
  bool is_zero() const;
};

ZHom zmul(const ZHom& a, const ZHom& b);
void zsub_inplace(ZHom& a, const ZHom& b);
/// Exact quotient by lex long division; throws std::domain_error if b does
/// not divide a.
ZHom zdivexact(ZHom a, const ZHom& b);
/// Determinant of an n x n row-major matrix of forms of one common degree.
ZHom bareiss_poly(std::vector<ZHom> a, std::size_t n);

SurfForm to_surf(const ZHom& z);

}  // namespace tpsimp
