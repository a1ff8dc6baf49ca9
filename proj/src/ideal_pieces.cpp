#include "tpsimp/ideal_pieces.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tpsimp {

namespace {

QMatrix rows_of(const std::vector<BiForm>& forms, Bidegree d) {
  QMatrix m(0, bi_dim(d));
  for (const auto& f : forms) m.append_row(f.coeffs());
  return m;
}

}  // namespace

QMatrix GradedPiece::matrix() const { return rows_of(basis, degree); }

GradedPiece ideal_piece(const PointSet& X, Bidegree d) {
  GradedPiece p{d, {}};
  const QMatrix ns = X.empty() ? QMatrix::identity(bi_dim(d)) : null_space(eval_matrix(X, d));
  for (std::size_t r = 0; r < ns.rows(); ++r) p.basis.emplace_back(d, ns.row_vector(r));
  return p;
}

MGenerators m_generators(const PointSet& X) {
  if (!is_generic(X)) throw std::domain_error("point set is not generic");
  MGenerators g;
  g.r = X.size();
  g.k = static_cast<int>(g.r / 2);
  const GradedPiece low = ideal_piece(X, {g.k, 1});
  if (!g.odd()) {
    if (low.dim() != 2) throw std::logic_error("m_generators: expected a 2-dimensional piece");
    g.g1 = low.basis[0];
    g.g2 = low.basis[1];
    return g;
  }
  if (low.dim() != 1) throw std::logic_error("m_generators: expected a 1-dimensional piece");
  g.g1 = low.basis[0];
  const GradedPiece high = ideal_piece(X, {g.k + 1, 1});
  if (high.dim() != 3) throw std::logic_error("m_generators: expected a 3-dimensional piece");
  const BiForm s = BiForm::monomial({1, 0, 0, 0}), t = BiForm::monomial({0, 1, 0, 0});
  const Echelon shifts = rref(rows_of({s * g.g1, t * g.g1}, high.degree));
  for (const auto& cand : high.basis) {
    auto red = reduce_against(shifts, cand.coeffs());
    auto lead = std::find_if(red.begin(), red.end(), [](const Rational& x) { return x != 0; });
    if (lead == red.end()) continue;
    const Rational inv = 1 / *lead;
    for (auto& x : red) x *= inv;
    g.g2 = BiForm(high.degree, std::move(red));
    return g;
  }
  throw std::logic_error("m_generators: no complement found");
}

std::vector<BiForm> st_monomials(int n) {
  std::vector<BiForm> out;
  for (int p = 0; p <= n; ++p) out.push_back(BiForm::monomial({n - p, p, 0, 0}));
  return out;
}

QMatrix StructuredBasis::matrix() const { return rows_of(b, {a, 1}); }

StructuredBasis basis_a1(const MGenerators& g, int a) {
  StructuredBasis sb;
  sb.a = a;
  sb.gens = g;
  sb.deg_q = a - g.k;
  sb.deg_p = g.odd() ? a - g.k - 1 : a - g.k;
  if (sb.deg_q < 0 || sb.deg_p < 0) throw std::invalid_argument("basis_a1: a is smaller than ceil(r/2)");
  for (const auto& m : st_monomials(sb.deg_q)) sb.b.push_back(m * g.g1);
  sb.n_g1 = sb.b.size();
  for (const auto& m : st_monomials(sb.deg_p)) sb.b.push_back(m * g.g2);
  return sb;
}

namespace {

bool minor_nonzero(const QMatrix& C, const std::array<std::size_t, 4>& cols) {
  return determinant(C.select_columns(cols)) != 0;
}

}  // namespace

bool minors_certificate(const QMatrix& C, CertMode mode, Rng* rng, std::size_t spot_count) {
  if (C.rows() != 4 || C.cols() < 4) return false;
  const std::size_t q = C.cols();
  if (mode == CertMode::full) {
    std::array<std::size_t, 4> c{};
    for (c[0] = 0; c[0] < q; ++c[0])
      for (c[1] = c[0] + 1; c[1] < q; ++c[1])
        for (c[2] = c[1] + 1; c[2] < q; ++c[2])
          for (c[3] = c[2] + 1; c[3] < q; ++c[3])
            if (!minor_nonzero(C, c)) return false;
    return true;
  }
  if (rank(C) != 4) return false;
  for (std::size_t j = 0; j < q; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < 4; ++i) zero = zero && C(i, j) == 0;
    if (zero) return false;
  }
  Rng local(0x5eed);
  Rng& g = rng ? *rng : local;
  std::vector<std::size_t> idx(q);
  for (std::size_t n = 0; n < spot_count; ++n) {
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < 4; ++k) std::swap(idx[k], idx[k + g.index(q - k)]);
    std::array<std::size_t, 4> c{idx[0], idx[1], idx[2], idx[3]};
    std::sort(c.begin(), c.end());
    if (!minor_nonzero(C, c)) return false;
  }
  return true;
}

namespace {

std::array<BiForm, 4> combine(const StructuredBasis& sb, const QMatrix& C) {
  std::array<BiForm, 4> f;
  for (std::size_t i = 0; i < 4; ++i) {
    f[i] = BiForm({sb.a, 1});
    for (std::size_t j = 0; j < sb.q(); ++j)
      if (C(i, j) != 0) f[i] += sb.b[j] * C(i, j);
  }
  return f;
}

}  // namespace

SubspaceU choose_generic_U(const StructuredBasis& sb, Rng& rng, const ChooseOptions& opt) {
  const std::size_t q = sb.q();
  if (q < 4) throw std::invalid_argument("choose_generic_U: q < 4, U cannot be 4-dimensional");
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    QMatrix C(4, q);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < q; ++j) C(i, j) = rng.uniform(-opt.coeff_bound, opt.coeff_bound);
    if (!minors_certificate(C, opt.mode, &rng, opt.spot_count)) continue;
    SubspaceU U;
    U.a = sb.a;
    U.C = C;
    U.f = combine(sb, C);
    U.certificate = true;
    return U;
  }
  throw std::runtime_error("choose_generic_U: certificate failed for every sample");
}

SubspaceU choose_generic_U(const StructuredBasis& sb, std::uint64_t seed, const ChooseOptions& opt) {
  Rng rng(seed);
  SubspaceU U = choose_generic_U(sb, rng, opt);
  U.seed = seed;
  return U;
}

SubspaceU subspace_from_forms(const StructuredBasis& sb, const std::array<BiForm, 4>& f) {
  const QMatrix B = sb.matrix();
  SubspaceU U;
  U.a = sb.a;
  U.C = QMatrix(4, sb.q());
  for (std::size_t i = 0; i < 4; ++i) {
    if (f[i].bidegree() != Bidegree{sb.a, 1})
      throw std::invalid_argument("U: form " + std::to_string(i) + " does not have bidegree (a,1)");
    auto x = solve_row_combination(B, f[i].coeffs());
    if (!x) throw std::invalid_argument("U: form " + std::to_string(i) + " does not vanish on the points");
    for (std::size_t j = 0; j < sb.q(); ++j) U.C(i, j) = (*x)[j];
  }
  if (rank(U.C) != 4) throw std::invalid_argument("U: the four forms are linearly dependent");
  U.f = f;
  return U;
}

}  // namespace tpsimp
