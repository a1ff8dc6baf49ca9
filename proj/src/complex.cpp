#include "tpsimp/complex.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "tpsimp/errors.hpp"
#include "tpsimp/interpolate.hpp"
#include "tpsimp/modp.hpp"
#include "tpsimp/upoly.hpp"
#include "tpsimp/zhom.hpp"

namespace tpsimp {

// ---------------------------------------------------------------------------
// LinMatrix

LinMatrix::LinMatrix(std::size_t rows, std::size_t cols) {
  for (auto& m : coef) m = QMatrix(rows, cols);
}

QMatrix LinMatrix::at(std::span<const Rational> xyzw) const {
  QMatrix m(rows(), cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) {
      Rational acc = 0;
      for (int v = 0; v < 4; ++v)
        if (coef[v](r, c) != 0 && xyzw[v] != 0) acc += coef[v](r, c) * xyzw[v];
      m(r, c) = acc;
    }
  return m;
}

SurfForm LinMatrix::entry(std::size_t r, std::size_t c) const {
  return SurfForm::linear({coef[0](r, c), coef[1](r, c), coef[2](r, c), coef[3](r, c)});
}

LinMatrix LinMatrix::select_columns(std::span<const std::size_t> cols) const {
  LinMatrix out;
  for (int v = 0; v < 4; ++v) out.coef[v] = coef[v].select_columns(cols);
  return out;
}

LinMatrix LinMatrix::select_rows(std::span<const std::size_t> rows) const {
  LinMatrix out;
  for (int v = 0; v < 4; ++v) out.coef[v] = coef[v].select_rows(rows);
  return out;
}

std::vector<std::vector<std::string>> LinMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) out[r].push_back(entry(r, c).to_string());
  return out;
}

bool product_is_zero(const LinMatrix& A, const LinMatrix& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("product_is_zero: shape mismatch");
  for (int v = 0; v < 4; ++v)
    for (int w = v; w < 4; ++w) {
      QMatrix m = A.coef[v] * B.coef[w];
      if (v != w) m = m + A.coef[w] * B.coef[v];
      if (!m.is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// d1 and d2

ComplexNu build_d1(const SubspaceU& U, const MuBasis& mb, std::size_t r) {
  ComplexNu cn;
  cn.a = U.a;
  cn.r = r;
  const int top = 2 * U.a - 1;
  const std::size_t rows = static_cast<std::size_t>(2 * U.a);
  const std::size_t cols = (static_cast<std::size_t>(top - mb.mu1) + 1) + (static_cast<std::size_t>(top - mb.mu2) + 1);
  if (top < mb.mu1 || cols != rows + r)
    throw PipelineError("d1", "bumped syzygies give " + std::to_string(cols) + " columns, expected 2a+r = " +
                                  std::to_string(rows + r));
  cn.d1 = LinMatrix(rows, cols);
  std::size_t col = 0;
  for (int which = 1; which <= 2; ++which) {
    const SyzVec& K = which == 1 ? mb.K1 : mb.K2;
    const int mu = which == 1 ? mb.mu1 : mb.mu2;
    const int n = top - mu;
    for (int p = 0; p <= n; ++p, ++col) {
      cn.columns.push_back({which, n, p});
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k <= mu; ++k) cn.d1.coef[j](static_cast<std::size_t>(p + k), col) = K[j].coeffs()[k];
    }
  }
  return cn;
}

ComplexNu build_d1_direct(const SubspaceU& U, std::size_t r) {
  const int a = U.a;
  const std::size_t n = static_cast<std::size_t>(2 * a);  // coefficients per L_j
  const Bidegree target{3 * a - 1, 1};
  QMatrix M(bi_dim(target), 4 * n);
  for (std::size_t j = 0; j < 4; ++j) {
    const BiForm& f = U.f[j];
    for (int et = 0; et <= a; ++et)
      for (int ev = 0; ev <= 1; ++ev) {
        const Rational& c = f.coeffs()[bi_index(f.bidegree(), et, ev)];
        if (c == 0) continue;
        for (std::size_t p = 0; p < n; ++p) M(bi_index(target, static_cast<int>(p) + et, ev), j * n + p) += c;
      }
  }
  const QMatrix ns = null_space(M);
  if (ns.rows() != n + r)
    throw PipelineError("d1", "degree-nu syzygy space has dimension " + std::to_string(ns.rows()) +
                                  ", expected 2a+r = " + std::to_string(n + r));
  ComplexNu cn;
  cn.a = a;
  cn.r = r;
  cn.d1 = LinMatrix(n, ns.rows());
  for (std::size_t c = 0; c < ns.rows(); ++c) {
    cn.columns.push_back({0, 0, static_cast<int>(c)});
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t p = 0; p < n; ++p) cn.d1.coef[j](p, c) = ns(c, j * n + p);
  }
  return cn;
}

namespace {

// Full column rank modulo one prime implies full column rank over Q.
bool full_column_rank_mod(const QMatrix& M) {
  if (M.cols() > M.rows()) return false;
  PrimeSequence primes;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const PrimeField F(primes.next());
    std::vector<std::uint64_t> a(M.rows() * M.cols());
    bool ok = true;
    for (std::size_t r = 0; r < M.rows() && ok; ++r)
      for (std::size_t c = 0; c < M.cols() && ok; ++c) {
        if (M(r, c) == 0) continue;
        auto x = F.from_rational(M(r, c));
        ok = x.has_value();
        if (ok) a[r * M.cols() + c] = *x;
      }
    if (ok) return rank_mod(F, a, M.rows(), M.cols()) == M.cols();
  }
  return false;
}

}  // namespace

void compute_d2(ComplexNu& cn) {
  const std::size_t n = cn.d1.rows(), m = cn.d1.cols();
  // No nonzero constant vector may lie in the kernel.
  QMatrix stack = cn.d1.coef[0].stacked(cn.d1.coef[1]).stacked(cn.d1.coef[2]).stacked(cn.d1.coef[3]);
  if (!full_column_rank_mod(stack) && rank(stack) != m)
    throw PipelineError("d2", "d1 has a nonzero constant kernel vector");

  // Unknown y(c,w): coefficient of X_w in the c-th entry of a kernel column.
  static constexpr std::array<std::pair<int, int>, 10> kPairs = {
      {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};
  QMatrix E(n * kPairs.size(), 4 * m);
  for (std::size_t rho = 0; rho < n; ++rho)
    for (std::size_t q = 0; q < kPairs.size(); ++q) {
      const auto [v, w] = kPairs[q];
      const std::size_t row = rho * kPairs.size() + q;
      for (std::size_t c = 0; c < m; ++c) {
        E(row, c * 4 + w) += cn.d1.coef[v](rho, c);
        if (v != w) E(row, c * 4 + v) += cn.d1.coef[w](rho, c);
      }
    }
  const QMatrix ns = full_column_rank_mod(E) ? QMatrix(0, E.cols()) : null_space(E);
  if (ns.rows() != cn.r)
    throw PipelineError("d2", "ker d1 in linear forms has dimension " + std::to_string(ns.rows()) + ", expected r = " +
                                  std::to_string(cn.r));
  cn.d2 = LinMatrix(m, cn.r);
  for (std::size_t k = 0; k < ns.rows(); ++k)
    for (std::size_t c = 0; c < m; ++c)
      for (int w = 0; w < 4; ++w) cn.d2.coef[w](c, k) = ns(k, c * 4 + w);
}

// ---------------------------------------------------------------------------
// Determinant of the complex

namespace {

std::array<Rational, 4> random_point(Rng& rng, std::int64_t bound) {
  return {Rational(rng.uniform(-bound, bound)), Rational(rng.uniform(-bound, bound)),
          Rational(rng.uniform(-bound, bound)), Rational(rng.uniform(-bound, bound))};
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& J, std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m; ++c)
    if (std::find(J.begin(), J.end(), c) == J.end()) out.push_back(c);
  return out;
}

Rational det_at(const LinMatrix& M, const std::array<Rational, 4>& q) {
  if (M.rows() == 0) return 1;
  return determinant(M.at(q));
}

// Both minors nonzero at q.
bool admissible(const ComplexNu& cn, const std::vector<std::size_t>& J, const std::array<Rational, 4>& q) {
  const auto Jc = complement(J, cn.d1.cols());
  if (det_at(cn.d1.select_columns(J), q) == 0) return false;
  if (cn.r > 0 && det_at(cn.d2.select_rows(Jc), q) == 0) return false;
  return true;
}

std::vector<std::size_t> choose_J(const ComplexNu& cn, Rng& rng) {
  const std::size_t n = cn.d1.rows(), m = cn.d1.cols();
  for (int attempt = 0; attempt < 3; ++attempt) {
    const auto q = random_point(rng, 1000);
    Echelon e = rref(cn.d1.at(q));
    if (e.pivots.size() != n) continue;
    if (admissible(cn, e.pivots, q)) return e.pivots;
    break;
  }
  std::vector<std::size_t> idx(m);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < n; ++k) std::swap(idx[k], idx[k + rng.index(m - k)]);
    std::vector<std::size_t> J(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(J.begin(), J.end());
    if (admissible(cn, J, random_point(rng, 1000))) return J;
  }
  throw PipelineError("determinant", "no admissible column subset J found");
}

// Coefficient matrices reduced mod p; false if p divides a denominator.
bool reduce_mod(const PrimeField& F, const LinMatrix& M, std::array<std::vector<std::uint64_t>, 4>& out) {
  for (int v = 0; v < 4; ++v) {
    const QMatrix& C = M.coef[v];
    out[v].assign(C.rows() * C.cols(), 0);
    for (std::size_t r = 0; r < C.rows(); ++r)
      for (std::size_t c = 0; c < C.cols(); ++c) {
        if (C(r, c) == 0) continue;
        auto x = F.from_rational(C(r, c));
        if (!x) return false;
        out[v][r * C.cols() + c] = *x;
      }
  }
  return true;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  const unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(count));
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < count; k += t) fn(k);
    });
  for (auto& th : pool) th.join();
}

// Evaluates a SurfForm modulo p at a point given in Montgomery form.
struct ModSurf {
  const PrimeField& F;
  int d;
  std::vector<Exponent4> mons;
  std::vector<std::uint64_t> c;

  static std::optional<ModSurf> make(const PrimeField& F, const SurfForm& s) {
    ModSurf m{F, s.degree(), surf_monomials(s.degree()), {}};
    m.c.reserve(s.coeffs().size());
    for (const auto& x : s.coeffs()) {
      auto y = F.from_rational(x);
      if (!y) return std::nullopt;
      m.c.push_back(*y);
    }
    return m;
  }

  std::uint64_t eval(const std::array<std::uint64_t, 4>& x) const {
    std::array<std::vector<std::uint64_t>, 4> pw;
    for (int v = 0; v < 4; ++v) {
      pw[v].resize(static_cast<std::size_t>(d) + 1);
      pw[v][0] = F.one();
      for (int k = 1; k <= d; ++k) pw[v][k] = F.mul(pw[v][k - 1], x[v]);
    }
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < mons.size(); ++k) {
      if (c[k] == 0) continue;
      const auto& e = mons[k];
      acc = F.add(acc, F.mul(F.mul(c[k], pw[0][e[0]]), F.mul(pw[1][e[1]], F.mul(pw[2][e[2]], pw[3][e[3]]))));
    }
    return acc;
  }
};

// Univariate Newton interpolation through (t_k, y_k), k = 0..D, over Q.
UPoly newton_q(const std::vector<Rational>& t, std::vector<Rational> y) {
  const std::size_t n = t.size();
  for (std::size_t l = 1; l < n; ++l)
    for (std::size_t i = n - 1; i >= l; --i) y[i] = (y[i] - y[i - 1]) / (t[i] - t[i - l]);
  std::vector<Rational> res(n + 1);
  res[0] = y[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    for (std::size_t k = n - 1 - i + 1; k-- > 0;) {
      // new[k] = old[k-1] - t_i old[k]
      Rational lower = k > 0 ? res[k - 1] : Rational(0);
      res[k] = lower - t[i] * res[k];
    }
    res[0] += y[i];
  }
  res.resize(n);
  return UPoly(std::move(res));
}

int power_screen(const SurfForm& P, Rng& rng) {
  const int D = P.degree();
  if (D <= 1) return 1;
  PrimeSequence primes;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const auto base = random_point(rng, 50), dir = random_point(rng, 50);
    const Rational lc = P.evaluate(dir);
    if (lc == 0) continue;
    const std::uint64_t p = primes.next();
    PrimeField F(p);
    auto ms = ModSurf::make(F, P);
    auto lcm = F.from_rational(lc);
    if (!ms || !lcm || *lcm == 0) continue;
    // Values along the line at t = 0..D, then Newton mod p.
    std::array<std::uint64_t, 4> b{}, dv{};
    for (int v = 0; v < 4; ++v) {
      b[v] = *F.from_rational(base[v]);
      dv[v] = *F.from_rational(dir[v]);
    }
    std::vector<std::uint64_t> ts(D + 1), ys(D + 1);
    for (int k = 0; k <= D; ++k) {
      ts[k] = F.from_u64(static_cast<std::uint64_t>(k));
      std::array<std::uint64_t, 4> x{};
      for (int v = 0; v < 4; ++v) x[v] = F.add(b[v], F.mul(ts[k], dv[v]));
      ys[k] = ms->eval(x);
    }
    for (int l = 1; l <= D; ++l)
      for (int i = D; i >= l; --i) ys[i] = F.mul(F.sub(ys[i], ys[i - 1]), F.inv(F.sub(ts[i], ts[i - l])));
    std::vector<std::uint64_t> res(D + 2, 0);
    res[0] = ys[D];
    for (int i = D - 1; i >= 0; --i) {
      for (int k = D - i; k >= 0; --k) {
        const std::uint64_t lower = k > 0 ? res[k - 1] : 0;
        res[k] = F.sub(lower, F.mul(ts[i], res[k]));
      }
      res[0] = F.add(res[0], ys[i]);
    }
    res.resize(D + 1);
    if (gcd_with_derivative_degree_mod(F, res) == 0) return 1;
    // Possibly a power: decide over Q.
    std::vector<Rational> tq(D + 1), yq(D + 1);
    for (int k = 0; k <= D; ++k) {
      tq[k] = k;
      std::array<Rational, 4> x;
      for (int v = 0; v < 4; ++v) x[v] = base[v] + tq[k] * dir[v];
      yq[k] = P.evaluate(x);
    }
    return perfect_power_exponent(newton_q(tq, std::move(yq)));
  }
  return 1;
}

// --- symbolic cross-check -------------------------------------------------

// Integer linear entries after scaling each column to clear denominators.
std::vector<ZHom> integral_linear(const LinMatrix& M) {
  const std::size_t n = M.rows(), m = M.cols();
  std::vector<ZHom> out(n * m);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<Rational> col;
    for (std::size_t r = 0; r < n; ++r)
      for (int v = 0; v < 4; ++v) col.push_back(M.coef[v](r, c));
    const Integer l = denominator_lcm(col);
    for (std::size_t r = 0; r < n; ++r) {
      ZHom z{1, std::vector<Integer>(4)};
      for (int v = 0; v < 4; ++v) z.c[v] = Integer(M.coef[v](r, c) * l);
      out[r * m + c] = std::move(z);
    }
  }
  return out;
}

bool bareiss_check(const ComplexNu& cn, const std::vector<std::size_t>& J, const SurfForm& H) {
  const auto Jc = complement(J, cn.d1.cols());
  const std::size_t n = cn.d1.rows();
  const ZHom m1 = bareiss_poly(integral_linear(cn.d1.select_columns(J)), n);
  ZHom m2 = bareiss_poly(integral_linear(cn.d2.select_rows(Jc)), cn.r);
  if (m1.is_zero() || m2.is_zero()) return false;
  // Gauss: a primitive divisor leaves an integral quotient.
  const Integer g = content(m2.c);
  for (auto& x : m2.c) x /= g;
  try {
    const ZHom quotient = zdivexact(m1, m2);
    return to_surf(quotient).proportional_to(H);
  } catch (const std::domain_error&) {
    return false;
  }
}

}  // namespace

ImplicitResult det_complex(const ComplexNu& cn, const DetOptions& opt) {
  const std::size_t n = cn.d1.rows(), m = cn.d1.cols(), r = cn.r;
  if (m != n + r || cn.d2.rows() != m || cn.d2.cols() != r)
    throw PipelineError("determinant", "complex dimensions are inconsistent");
  const int D = static_cast<int>(n) - static_cast<int>(r);
  Rng rng(opt.seed);

  ImplicitResult res;
  if (opt.forced_J) {
    res.J = *opt.forced_J;
    std::sort(res.J.begin(), res.J.end());
    if (res.J.size() != n || !admissible(cn, res.J, random_point(rng, 1000)))
      throw PipelineError("determinant", "the requested column subset is not admissible");
  } else {
    res.J = choose_J(cn, rng);
  }
  const auto Jc = complement(res.J, m);
  const LinMatrix M1 = cn.d1.select_columns(res.J);
  const LinMatrix M2 = cn.d2.select_rows(Jc);

  // Lower-set positions and their homogeneous monomials X^i Y^j Z^k W^(D-i-j-k).
  struct Node {
    int i, j, k;
    std::size_t surf;
  };
  std::vector<Node> nodes;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j)
      for (int k = 0; i + j + k <= D; ++k) nodes.push_back({i, j, k, surf_index(D, {i, j, k, D - i - j - k})});
  const std::size_t N = surf_dim(D);

  PrimeSequence primes;
  RationalLifter lifter(N);
  std::optional<std::size_t> lead_idx;
  std::optional<std::vector<Rational>> cand;
  bool done = false;
  constexpr int kMaxPrimes = 4000;
  for (int iter = 0; iter < kMaxPrimes && !done; ++iter) {
    const std::uint64_t p = primes.next();
    const PrimeField F(p);
    std::array<std::vector<std::uint64_t>, 4> c1, c2;
    if (!reduce_mod(F, M1, c1) || !reduce_mod(F, M2, c2)) continue;

    std::array<std::vector<std::uint64_t>, 3> ax;
    for (auto& axis : ax) {
      while (axis.size() < static_cast<std::size_t>(D) + 1) {
        const std::uint64_t x = F.from_u64(rng.next() % p);
        if (std::find(axis.begin(), axis.end(), x) == axis.end()) axis.push_back(x);
      }
    }
    LowerSetInterpolator interp(F, D, ax);
    std::vector<std::uint64_t> values(interp.value_size(), 0);
    std::vector<char> bad(nodes.size(), 0);
    parallel_for(nodes.size(), opt.threads, [&](std::size_t idx) {
      const Node& nd = nodes[idx];
      const std::uint64_t x = ax[0][nd.i], y = ax[1][nd.j], z = ax[2][nd.k];
      auto eval = [&](const std::array<std::vector<std::uint64_t>, 4>& c, std::size_t sz) {
        std::vector<std::uint64_t> a(sz * sz);
        for (std::size_t e = 0; e < a.size(); ++e)
          a[e] = F.add(F.add(F.mul(c[0][e], x), F.mul(c[1][e], y)), F.add(F.mul(c[2][e], z), c[3][e]));
        return det_mod(F, a, sz);
      };
      const std::uint64_t d1v = eval(c1, n);
      const std::uint64_t d2v = r > 0 ? eval(c2, r) : F.one();
      if (d2v == 0) {
        bad[idx] = 1;
        return;
      }
      values[interp.pos(nd.i, nd.j, nd.k)] = F.mul(d1v, F.inv(d2v));
    });
    if (std::any_of(bad.begin(), bad.end(), [](char b) { return b != 0; })) continue;
    interp.solve(values);

    std::vector<std::uint64_t> image(N, 0);
    for (const auto& nd : nodes) image[nd.surf] = values[interp.pos(nd.i, nd.j, nd.k)];
    auto lead = std::find_if(image.begin(), image.end(), [](std::uint64_t v) { return v != 0; });
    if (lead == image.end()) continue;
    const std::size_t li = static_cast<std::size_t>(lead - image.begin());
    if (!lead_idx || li < *lead_idx) {
      // Earlier primes lost the true leading term; start over.
      if (lead_idx) {
        lifter.reset();
        cand.reset();
      }
      lead_idx = li;
    } else if (li > *lead_idx) {
      continue;
    }
    const std::uint64_t inv = F.inv(image[li]);
    for (auto& v : image) v = F.mul(v, inv);

    if (cand) {
      bool agree = true;
      for (std::size_t k = 0; k < N && agree; ++k) {
        auto cv = F.from_rational((*cand)[k]);
        agree = cv && *cv == image[k];
      }
      if (agree) {
        done = true;
        break;
      }
      cand.reset();
    }
    for (auto& v : image) v = F.to_u64(v);
    lifter.add_image(image, p);
    cand = lifter.try_reconstruct();
  }
  if (!done || !cand) throw PipelineError("determinant", "multi-modular reconstruction did not converge");
  res.primes_used = lifter.primes_used() + 1;

  // Fix the scale exactly and confirm at an independent point.
  SurfForm shape(D, *cand);
  Rational scale = 0;
  for (int attempt = 0; attempt < 10 && scale == 0; ++attempt) {
    const auto q = random_point(rng, 1000);
    const Rational den = det_at(M2, q);
    const Rational sv = shape.evaluate(q);
    if (den == 0 || sv == 0) continue;
    scale = det_at(M1, q) / den / sv;
  }
  if (scale == 0) throw PipelineError("determinant", "could not fix the scale of det M1 / det M2");
  res.det_poly = shape * scale;
  for (int checks = 0, attempt = 0; checks < 2 && attempt < 10; ++attempt) {
    const auto q = random_point(rng, 1000);
    const Rational den = det_at(M2, q);
    if (den == 0) continue;
    if (det_at(M1, q) / den != res.det_poly.evaluate(q))
      throw PipelineError("determinant", "interpolated det M1 / det M2 fails an exact spot check");
    ++checks;
  }
  res.H = res.det_poly.normalized();

  if (static_cast<int>(n) <= opt.bareiss_max_size) {
    res.bareiss_checked = true;
    res.bareiss_agrees = bareiss_check(cn, res.J, res.H);
    if (!res.bareiss_agrees)
      throw PipelineError("determinant", "fraction-free symbolic determinant disagrees with interpolation");
  }
  res.power_exponent = power_screen(res.det_poly, rng);
  return res;
}

// ---------------------------------------------------------------------------
// Verification and membership

std::array<Rational, 4> parameterize(const SubspaceU& U, const Rational& s, const Rational& t, const Rational& u,
                                     const Rational& v) {
  return {U.f[0].evaluate(s, t, u, v), U.f[1].evaluate(s, t, u, v), U.f[2].evaluate(s, t, u, v),
          U.f[3].evaluate(s, t, u, v)};
}

bool vanishes_modular(const SurfForm& H, const std::array<BiForm, 4>& f, int nprimes, int points, Rng& rng) {
  int used = 0;
  // Start at a random offset in the prime sequence so repeated calls differ.
  PrimeSequence primes;
  for (std::uint64_t skip = rng.next() % 64; skip > 0; --skip) primes.next();
  while (used < nprimes) {
    const PrimeField F(primes.next());
    auto hs = ModSurf::make(F, H);
    if (!hs) continue;
    std::array<std::vector<std::uint64_t>, 4> fc;
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i)
      for (const auto& c : f[i].coeffs()) {
        auto x = F.from_rational(c);
        if (!x) {
          ok = false;
          break;
        }
        fc[i].push_back(*x);
      }
    if (!ok) continue;
    ++used;
    const Bidegree bd = f[0].bidegree();
    for (int k = 0; k < points; ++k) {
      std::array<std::uint64_t, 4> stuv;
      for (auto& x : stuv) x = F.from_u64(rng.next() % F.modulus());
      std::array<std::uint64_t, 4> vals{};
      for (int i = 0; i < 4; ++i) {
        std::uint64_t acc = 0;
        for (int p = 0; p <= bd.i; ++p)
          for (int q = 0; q <= bd.j; ++q) {
            const std::uint64_t c = fc[i][bi_index(bd, p, q)];
            if (c == 0) continue;
            acc = F.add(acc, F.mul(c, F.mul(F.mul(F.pow(stuv[0], bd.i - p), F.pow(stuv[1], p)),
                                            F.mul(F.pow(stuv[2], bd.j - q), F.pow(stuv[3], q)))));
          }
        vals[i] = acc;
      }
      if (hs->eval(vals) != 0) return false;
    }
  }
  return true;
}

VerifyReport verify_implicit(const SurfForm& H, const SubspaceU& U, std::size_t r, std::size_t samples,
                             std::uint64_t seed) {
  VerifyReport rep;
  Rng rng(seed);
  const int d = H.degree();
  const int a = U.a;
  rep.degree_ok = d == 2 * a - static_cast<int>(r);
  if (H.is_zero()) return rep;

  const double cost = static_cast<double>(H.num_terms()) * static_cast<double>(bi_dim({d * a, d})) * 2.0 * (a + 1);
  if (cost <= 2e8) {
    rep.substitution_method = "exact";
    rep.substitution_zero = substitute_surface(H, U.f).is_zero();
  } else {
    rep.substitution_method = "modular-random";
    rep.substitution_zero = vanishes_modular(H, U.f, 3, 4, rng);
  }

  const SurfForm Hn = H.normalized();
  std::vector<std::pair<Exponent4, Integer>> terms;
  for (const auto& [e, c] : Hn.terms()) terms.push_back({e, c.get_num()});
  rep.samples_vanish = true;
  std::size_t taken = 0;
  for (std::size_t attempt = 0; taken < samples && attempt < 10 * samples + 10; ++attempt) {
    const Rational s = rng.uniform(-100, 100), t = rng.uniform(-100, 100), u = rng.uniform(-100, 100),
                   v = rng.uniform(-100, 100);
    auto q = parameterize(U, s, t, u, v);
    if (std::all_of(q.begin(), q.end(), [](const Rational& x) { return x == 0; })) continue;
    std::vector<Rational> qs(q.begin(), q.end());
    const Integer l = denominator_lcm(qs);
    std::array<std::vector<Integer>, 4> pw;
    for (int k = 0; k < 4; ++k) {
      pw[k].resize(static_cast<std::size_t>(d) + 1);
      pw[k][0] = 1;
      const Integer base(q[k] * l);
      for (int e = 1; e <= d; ++e) pw[k][e] = pw[k][e - 1] * base;
    }
    Integer acc = 0, term;
    for (const auto& [e, c] : terms) {
      term = c * pw[0][e[0]];
      term *= pw[1][e[1]];
      term *= pw[2][e[2]];
      term *= pw[3][e[3]];
      acc += term;
    }
    ++taken;
    if (acc != 0) {
      rep.samples_vanish = false;
      break;
    }
  }
  rep.samples = taken;
  return rep;
}

Membership membership_rank_test(const ComplexNu& cn, std::span<const Rational> q) {
  if (q.size() != 4 || std::all_of(q.begin(), q.end(), [](const Rational& x) { return x == 0; }))
    throw std::invalid_argument("membership: the point must be a nonzero vector of length four");
  return rank(cn.d1.at(q)) < cn.d1.rows() ? Membership::on_surface : Membership::off_surface;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

class StageTimer {
 public:
  StageTimer(std::map<std::string, double>& sink, std::string name)
      : sink_(sink), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    sink_[name_] +=
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::map<std::string, double>& sink_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

template <class Fn>
auto stage(std::map<std::string, double>& timings, const std::string& name, Fn fn) {
  StageTimer timer(timings, name);
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

}  // namespace

SubspaceU instance_subspace(const Instance& inst, const StructuredBasis& sb, const ChooseOptions& opt) {
  if (inst.U) {
    std::array<BiForm, 4> f;
    for (int i = 0; i < 4; ++i) f[i] = BiForm::parse((*inst.U)[i], {inst.a, 1});
    SubspaceU U = subspace_from_forms(sb, f);
    U.certificate = minors_certificate(U.C, CertMode::spot);
    return U;
  }
  if (!inst.seed) throw std::invalid_argument("instance needs either U or seed");
  return choose_generic_U(sb, *inst.seed, opt);
}

PipelineResult implicitize(const Instance& inst, const PipelineOptions& opt) {
  PipelineResult out;
  auto& T = out.timings_ms;
  const PointSet& X = inst.points;
  out.r = X.size();
  const int a = inst.a;

  stage(T, "genericity", [&] {
    if (!is_generic(X)) throw PipelineError("genericity", "point set is not generic");
    return 0;
  });
  out.gens = stage(T, "generators", [&] { return m_generators(X); });
  out.basis = stage(T, "basis", [&] { return basis_a1(out.gens, a); });
  out.U = stage(T, "subspace", [&] { return instance_subspace(inst, out.basis, opt.choose); });

  if (opt.method == D1Method::alg1) {
    out.qp = stage(T, "qp", [&] { return qp_decompose(out.U, out.basis); });
    out.mu = stage(T, "mu-basis", [&] {
      Rng rng(inst.seed.value_or(0) ^ 0x9e3779b97f4a7c15ull);
      if (qp_rank(out.qp, rng) != 2) throw PipelineError("mu-basis", "QP does not have rank two");
      return opt.scan_mu ? mu_basis(out.qp, a, out.r) : mu_basis_known_degrees(out.qp, a, out.r);
    });
    out.cn = stage(T, "d1", [&] { return build_d1(out.U, *out.mu, out.r); });
  } else {
    out.cn = stage(T, "d1", [&] { return build_d1_direct(out.U, out.r); });
  }
  stage(T, "d2", [&] {
    compute_d2(out.cn);
    if (!product_is_zero(out.cn.d1, out.cn.d2)) throw PipelineError("d2", "d1 * d2 is not zero");
    return 0;
  });
  out.result = stage(T, "determinant", [&] { return det_complex(out.cn, opt.det); });
  if (opt.verify) {
    out.verification =
        stage(T, "verify", [&] { return verify_implicit(out.result.H, out.U, out.r, opt.verify_samples); });
  }
  return out;
}

}  // namespace tpsimp
