#include "tpsimp/syzygy.hpp"

#include <algorithm>
#include <stdexcept>

#include "tpsimp/errors.hpp"

namespace tpsimp {

namespace {

BiForm st_form(std::span<const Rational> coeffs, int deg) {
  return BiForm({deg, 0}, std::vector<Rational>(coeffs.begin(), coeffs.end()));
}

std::vector<Rational> flatten(const SyzVec& L) {
  std::vector<Rational> v;
  for (const auto& x : L) v.insert(v.end(), x.coeffs().begin(), x.coeffs().end());
  return v;
}

SyzVec unflatten(std::span<const Rational> v, int alpha) {
  const std::size_t n = static_cast<std::size_t>(alpha) + 1;
  SyzVec L;
  for (std::size_t i = 0; i < 4; ++i) L[i] = st_form(v.subspan(i * n, n), alpha);
  return L;
}

SyzVec times(const BiForm& m, const SyzVec& K) {
  SyzVec out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = m * K[i];
  return out;
}

}  // namespace

QPMatrix qp_decompose(const SubspaceU& U, const StructuredBasis& sb) {
  QPMatrix qp;
  qp.deg_q = sb.deg_q;
  qp.deg_p = sb.deg_p;
  const std::size_t nq = sb.n_g1, np = sb.q() - sb.n_g1;
  qp.A = QMatrix(4, nq);
  qp.B = QMatrix(4, np);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < nq; ++j) qp.A(i, j) = U.C(i, j);
    for (std::size_t j = 0; j < np; ++j) qp.B(i, j) = U.C(i, nq + j);
    qp.Q[i] = st_form(qp.A.row(i), qp.deg_q);
    qp.P[i] = st_form(qp.B.row(i), qp.deg_p);
    if (qp.Q[i] * sb.gens.g1 + qp.P[i] * sb.gens.g2 != U.f[i])
      throw std::logic_error("qp_decompose: Q g1 + P g2 does not reproduce f" + std::to_string(i));
  }
  return qp;
}

std::size_t qp_rank(const QPMatrix& qp, Rng& rng) {
  std::size_t best = 0;
  for (int attempt = 0; attempt < 3 && best < 2; ++attempt) {
    const Rational s = rng.uniform(-1000, 1000), t = rng.uniform(-1000, 1000);
    QMatrix m(2, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      m(0, i) = qp.Q[i].evaluate(s, t, 1, 1);
      m(1, i) = qp.P[i].evaluate(s, t, 1, 1);
    }
    best = std::max(best, rank(m));
  }
  return best;
}

std::vector<SyzVec> graded_kernel(const QPMatrix& qp, int alpha) {
  if (alpha < 0) return {};
  const std::size_t n = static_cast<std::size_t>(alpha) + 1;
  const std::size_t rq = n + static_cast<std::size_t>(qp.deg_q);
  const std::size_t rp = n + static_cast<std::size_t>(qp.deg_p);
  // Column i*n + p: coefficient of s^(alpha-p) t^p in L_i.
  QMatrix M(rq + rp, 4 * n);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t col = i * n + p;
      for (std::size_t c = 0; c < qp.A.cols(); ++c) M(p + c, col) += qp.A(i, c);
      for (std::size_t c = 0; c < qp.B.cols(); ++c) M(rq + p + c, col) += qp.B(i, c);
    }
  const QMatrix ns = null_space(M);
  std::vector<SyzVec> out;
  for (std::size_t r = 0; r < ns.rows(); ++r) out.push_back(unflatten(ns.row(r), alpha));
  return out;
}

BiForm syzygy_image(const SyzVec& L, const std::array<BiForm, 4>& f) {
  BiForm acc = L[0] * f[0];
  for (std::size_t i = 1; i < 4; ++i) acc += L[i] * f[i];
  return acc;
}

namespace {

struct Generator {
  SyzVec K;
  int deg;
};

// Adds the generators of ker QP in degree alpha that are not s,t-multiples
// of those already found.
void harvest(const std::vector<SyzVec>& ker, int alpha, std::vector<Generator>& found) {
  QMatrix span(0, 4 * (static_cast<std::size_t>(alpha) + 1));
  for (const auto& g : found)
    for (const auto& m : st_monomials(alpha - g.deg)) span.append_row(flatten(times(m, g.K)));
  if (ker.size() <= rank(span)) return;
  Echelon e = rref(span);
  for (const auto& L : ker) {
    auto red = reduce_against(e, flatten(L));
    auto lead = std::find_if(red.begin(), red.end(), [](const Rational& x) { return x != 0; });
    if (lead == red.end()) continue;
    const Rational inv = 1 / *lead;
    for (auto& x : red) x *= inv;
    found.push_back({unflatten(red, alpha), alpha});
    span.append_row(red);
    e = rref(span);
  }
}

bool rank_two_somewhere(const SyzVec& K1, const SyzVec& K2) {
  Rng rng(0x6d75);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Rational s = rng.uniform(-1000, 1000), t = rng.uniform(-1000, 1000);
    QMatrix m(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
      m(i, 0) = K1[i].evaluate(s, t, 1, 1);
      m(i, 1) = K2[i].evaluate(s, t, 1, 1);
    }
    if (rank(m) == 2) return true;
  }
  return false;
}

MuBasis finish(std::vector<Generator> found, int a, std::size_t r) {
  if (found.size() < 2)
    throw PipelineError("mu-basis", "fewer than two minimal syzygies up to degree 2a (gcd(f) != 1?)");
  if (found.size() > 2) throw PipelineError("mu-basis", "more than two minimal syzygies; QP is rank deficient");
  std::stable_sort(found.begin(), found.end(), [](const Generator& x, const Generator& y) { return x.deg > y.deg; });
  MuBasis mb;
  mb.K1 = found[0].K;
  mb.K2 = found[1].K;
  mb.mu1 = found[0].deg;
  mb.mu2 = found[1].deg;
  if (mb.mu1 + mb.mu2 != 2 * a - static_cast<int>(r))
    throw PipelineError("mu-basis", "degree sum " + std::to_string(mb.mu1 + mb.mu2) + " differs from 2a-r = " +
                                        std::to_string(2 * a - static_cast<int>(r)));
  mb.free_certified = rank_two_somewhere(mb.K1, mb.K2);
  if (!mb.free_certified) throw PipelineError("mu-basis", "[K1|K2] does not have rank two");
  return mb;
}

}  // namespace

MuBasis mu_basis(const QPMatrix& qp, int a, std::size_t r) {
  std::vector<Generator> found;
  for (int alpha = 0; alpha <= 2 * a && found.size() < 2; ++alpha) harvest(graded_kernel(qp, alpha), alpha, found);
  return finish(std::move(found), a, r);
}

MuBasis mu_basis_known_degrees(const QPMatrix& qp, int a, std::size_t r) {
  const int lo = a - static_cast<int>((r + 1) / 2);
  const int hi = a - static_cast<int>(r / 2);
  std::vector<Generator> found;
  if (lo < 0) throw PipelineError("mu-basis", "a is too small for the number of basepoints");
  // A kernel element below degree lo would show up here either as excess
  // dimension or as a rank-one pair (caught in finish), so no scan is needed.
  const auto ker_lo = graded_kernel(qp, lo);
  const std::size_t want_lo = lo == hi ? 2 : 1;
  if (ker_lo.size() != want_lo)
    throw PipelineError("mu-basis", "kernel in degree " + std::to_string(lo) + " has dimension " +
                                        std::to_string(ker_lo.size()) + ", expected " + std::to_string(want_lo));
  for (const auto& L : ker_lo) found.push_back({L, lo});
  if (lo != hi) {
    const auto ker_hi = graded_kernel(qp, hi);
    if (ker_hi.size() != 3)
      throw PipelineError("mu-basis", "kernel in degree " + std::to_string(hi) + " is not 3-dimensional");
    harvest(ker_hi, hi, found);
  }
  return finish(std::move(found), a, r);
}

}  // namespace tpsimp
