#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpsimp/bipoly.hpp"
#include "tpsimp/ideal_pieces.hpp"
#include "tpsimp/instance.hpp"
#include "tpsimp/matrix.hpp"
#include "tpsimp/syzygy.hpp"

namespace tpsimp {

/// Matrix whose entries are linear forms: entry(r,c) = sum_v coef[v](r,c) X_v
/// with X_0..X_3 = X,Y,Z,W.
struct LinMatrix {
  std::array<QMatrix, 4> coef;

  LinMatrix() = default;
  LinMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return coef[0].rows(); }
  std::size_t cols() const { return coef[0].cols(); }
  QMatrix at(std::span<const Rational> xyzw) const;
  SurfForm entry(std::size_t r, std::size_t c) const;
  LinMatrix select_columns(std::span<const std::size_t> cols) const;
  LinMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Entries in the polynomial grammar, row by row.
  std::vector<std::vector<std::string>> to_strings() const;
};

/// Coefficientwise exact test of A * B = 0 over S.
bool product_is_zero(const LinMatrix& A, const LinMatrix& B);

/// Label of a column of d1: monomial s^(deg-p) t^p times the syzygy `which`
/// (1 or 2 for the mu-basis; 0 for a directly computed syzygy).
struct ColumnLabel {
  int which = 0;
  int deg = 0;
  int p = 0;
};

/// The degree-nu strand 0 -> Z2 -> Z1 -> Z0 of the approximation complex,
/// nu = (2a-1, 0). Rows of d1 follow mono_basis(2a-1, 0).
struct ComplexNu {
  int a = 0;
  std::size_t r = 0;
  LinMatrix d1;  ///< 2a x (2a+r)
  LinMatrix d2;  ///< (2a+r) x r
  std::vector<ColumnLabel> columns;
};

/// Algorithm 1: bump the mu-basis up to degree 2a-1.
/// Throws PipelineError("d1") if the column count is not 2a + r.
ComplexNu build_d1(const SubspaceU& U, const MuBasis& mb, std::size_t r);

/// Algorithm 2: all degree-(2a-1,0) syzygies of f as one null space.
ComplexNu build_d1_direct(const SubspaceU& U, std::size_t r);

/// Fills d2 = ker d1 in linear forms. Throws PipelineError("d2") if the
/// solution space is not r-dimensional or d1 has a constant kernel vector.
void compute_d2(ComplexNu& cn);

struct DetOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Symbolic fraction-free cross-check when 2a is at most this.
  int bareiss_max_size = 12;
  std::optional<std::vector<std::size_t>> forced_J;
};

struct ImplicitResult {
  SurfForm det_poly;  ///< det M1 / det M2, exactly
  SurfForm H;         ///< det_poly normalized
  int deg_lambda_assumed = 1;
  std::vector<std::size_t> J;
  std::size_t primes_used = 0;
  bool bareiss_checked = false;
  bool bareiss_agrees = false;
  int power_exponent = 1;  ///< e > 1 means det_poly looks like an e-th power
  bool power_suspect() const { return power_exponent > 1; }
};

/// det Z_nu = det M1 / det M2 by multi-modular evaluation/interpolation,
/// with the exact scale fixed and checked by exact evaluation.
/// Throws PipelineError("determinant").
ImplicitResult det_complex(const ComplexNu& cn, const DetOptions& opt = {});

struct VerifyReport {
  bool substitution_zero = false;
  std::string substitution_method;  ///< "exact" or "modular-random"
  std::size_t samples = 0;
  bool samples_vanish = false;
  bool degree_ok = false;
  bool pass() const { return substitution_zero && samples_vanish && degree_ok; }
};

/// Checks H(f) = 0, H(lambda_U(p)) = 0 at random parameter points, and
/// deg H = 2a - r. Exact substitution is used unless it is estimated too
/// expensive, in which case H(f) is evaluated at random points modulo
/// several 62-bit primes.
VerifyReport verify_implicit(const SurfForm& H, const SubspaceU& U, std::size_t r, std::size_t samples,
                             std::uint64_t seed = 7);

/// H(f) at random points of P^1 x P^1 modulo random 62-bit primes.
bool vanishes_modular(const SurfForm& H, const std::array<BiForm, 4>& f, int primes, int points, Rng& rng);

enum class Membership { on_surface, off_surface };

/// Rank of d1 at q: < 2a iff q lies on the surface. Throws on q = 0.
Membership membership_rank_test(const ComplexNu& cn, std::span<const Rational> q);

/// lambda_U(s,t,u,v) = (f0,f1,f2,f3) at a parameter point.
std::array<Rational, 4> parameterize(const SubspaceU& U, const Rational& s, const Rational& t, const Rational& u,
                                     const Rational& v);

// ---------------------------------------------------------------------------
// End-to-end pipeline

enum class D1Method { alg1, alg2 };

struct PipelineOptions {
  D1Method method = D1Method::alg1;
  /// Use the full degree scan for the mu-basis (true) or only the two
  /// expected degrees (Algorithm 1 fast path).
  bool scan_mu = true;
  ChooseOptions choose;
  DetOptions det;
  std::size_t verify_samples = 20;
  bool verify = true;
};

struct PipelineResult {
  std::size_t r = 0;
  MGenerators gens;
  StructuredBasis basis;
  SubspaceU U;
  QPMatrix qp;
  std::optional<MuBasis> mu;
  ComplexNu cn;
  ImplicitResult result;
  std::optional<VerifyReport> verification;
  std::map<std::string, double> timings_ms;
};

/// U from the instance: explicit forms (certificate evaluated in spot mode)
/// or drawn at random from the seed.
SubspaceU instance_subspace(const Instance& inst, const StructuredBasis& sb, const ChooseOptions& opt);

/// genericity -> g1,g2 -> basis -> U -> QP -> mu-basis -> d1 -> d2 -> det.
/// Every failure is rethrown as PipelineError tagged with its stage.
PipelineResult implicitize(const Instance& inst, const PipelineOptions& opt = {});

}  // namespace tpsimp
