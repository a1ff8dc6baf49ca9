#pragma once

#include <array>
#include <vector>

#include "tpsimp/bipoly.hpp"
#include "tpsimp/ideal_pieces.hpp"
#include "tpsimp/matrix.hpp"

namespace tpsimp {

/// f_i = Q_i g1 + P_i g2 with Q_i, P_i forms in s,t only.
struct QPMatrix {
  std::array<BiForm, 4> Q;
  std::array<BiForm, 4> P;
  int deg_q = 0;
  int deg_p = 0;
  QMatrix A;  ///< 4 x (deg_q+1): coefficients of Q_i in st_monomials(deg_q)
  QMatrix B;  ///< 4 x (deg_p+1)
};

/// Reads Q, P off the blocks of C and checks Q_i g1 + P_i g2 = f_i exactly.
/// Throws std::logic_error on a mismatch (an ordering bug, not a math case).
QPMatrix qp_decompose(const SubspaceU& U, const StructuredBasis& sb);

/// Rank of the 2x4 matrix QP over k(s,t), from an evaluation at random points.
std::size_t qp_rank(const QPMatrix& qp, Rng& rng);

/// A 4-vector of forms of bidegree (alpha,0).
using SyzVec = std::array<BiForm, 4>;

/// Canonical basis of {L : QP L = 0, deg L = alpha}.
std::vector<SyzVec> graded_kernel(const QPMatrix& qp, int alpha);

/// L0 f0 + L1 f1 + L2 f2 + L3 f3.
BiForm syzygy_image(const SyzVec& L, const std::array<BiForm, 4>& f);

struct MuBasis {
  SyzVec K1;
  SyzVec K2;
  int mu1 = 0;  ///< mu1 >= mu2
  int mu2 = 0;
  bool free_certified = false;  ///< [K1|K2] has rank 2 at a random point
};

/// Scans alpha = 0..2a collecting minimal generators of ker QP.
/// Throws PipelineError (stage "mu-basis") when fewer than two appear, when
/// mu1 + mu2 != 2a - r, or when [K1|K2] is not of rank two.
MuBasis mu_basis(const QPMatrix& qp, int a, std::size_t r);

/// Structured fast path: computes the kernel only in the two expected degrees
/// a - floor(r/2) and a - ceil(r/2). Same failure contract as mu_basis.
MuBasis mu_basis_known_degrees(const QPMatrix& qp, int a, std::size_t r);

}  // namespace tpsimp
