#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tpsimp/bipoly.hpp"
#include "tpsimp/matrix.hpp"
#include "tpsimp/points.hpp"

namespace tpsimp {

/// (I_X)_(i,j) with its canonical (RREF) basis.
struct GradedPiece {
  Bidegree degree;
  std::vector<BiForm> basis;

  std::size_t dim() const { return basis.size(); }
  /// Basis coefficient vectors as rows.
  QMatrix matrix() const;
};

GradedPiece ideal_piece(const PointSet& X, Bidegree d);

/// Minimal generators of M = (+)_i (I_X)_(i,1) over k[s,t] for generic X:
/// bidegrees (k,1),(k,1) when r = 2k and (k,1),(k+1,1) when r = 2k+1.
struct MGenerators {
  BiForm g1;
  BiForm g2;
  std::size_t r = 0;
  int k = 0;
  bool odd() const { return r % 2 == 1; }
};

/// Throws std::domain_error when X is not generic.
MGenerators m_generators(const PointSet& X);

/// Monomials of degree n in s,t: s^n, s^(n-1) t, ..., t^n.
std::vector<BiForm> st_monomials(int n);

/// Ordered basis of (I_X)_(a,1): monomial multiples of g1, then of g2.
struct StructuredBasis {
  int a = 0;
  MGenerators gens;
  std::vector<BiForm> b;
  std::size_t n_g1 = 0;  ///< number of leading elements that are multiples of g1
  int deg_q = 0;         ///< s,t-degree of the g1 multipliers
  int deg_p = 0;         ///< s,t-degree of the g2 multipliers

  std::size_t q() const { return b.size(); }
  /// Rows = coefficient vectors of b against mono_basis(a,1).
  QMatrix matrix() const;
};

/// Throws std::invalid_argument when a < ceil(r/2).
StructuredBasis basis_a1(const MGenerators& g, int a);

enum class CertMode { full, spot };

/// Full: every maximal minor nonzero. Spot: rank 4, no zero column, and
/// `spot_count` random 4-column minors nonzero.
bool minors_certificate(const QMatrix& C, CertMode mode, Rng* rng = nullptr, std::size_t spot_count = 64);

/// The 4-dimensional subspace U = span(f0..f3) of (I_X)_(a,1), f = C * b.
struct SubspaceU {
  int a = 0;
  std::array<BiForm, 4> f;
  QMatrix C;                           ///< 4 x q
  std::optional<std::uint64_t> seed;   ///< set when C was drawn at random
  std::optional<bool> certificate;     ///< minors certificate outcome, if evaluated
};

struct ChooseOptions {
  CertMode mode = CertMode::spot;
  std::size_t spot_count = 64;
  std::int64_t coeff_bound = 20;
  int max_attempts = 100;
};

/// Random integer C with entries in [-coeff_bound, coeff_bound] passing the
/// certificate. Throws std::invalid_argument when q < 4 and
/// std::runtime_error when no sample passes.
SubspaceU choose_generic_U(const StructuredBasis& sb, Rng& rng, const ChooseOptions& opt = {});
SubspaceU choose_generic_U(const StructuredBasis& sb, std::uint64_t seed, const ChooseOptions& opt = {});

/// U given explicitly; C is recovered by solving f = C * b. Throws
/// std::invalid_argument if some f_i is outside (I_X)_(a,1) or the f are
/// dependent.
SubspaceU subspace_from_forms(const StructuredBasis& sb, const std::array<BiForm, 4>& f);

}  // namespace tpsimp
