#include "tpsimp/points.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace tpsimp {

namespace {

std::array<Rational, 2> normalize_pair(Rational x0, Rational x1) {
  if (x0 != 0) return {Rational(1), x1 / x0};
  if (x1 != 0) return {Rational(0), Rational(1)};
  throw std::invalid_argument("point of P^1 with both coordinates zero");
}

}  // namespace

PointP1P1 PointP1P1::make(Rational a0, Rational a1, Rational b0, Rational b1) {
  return {normalize_pair(std::move(a0), std::move(a1)), normalize_pair(std::move(b0), std::move(b1))};
}

std::string PointP1P1::to_string() const {
  return "((" + tpsimp::to_string(first[0]) + ":" + tpsimp::to_string(first[1]) + "),(" +
         tpsimp::to_string(second[0]) + ":" + tpsimp::to_string(second[1]) + "))";
}

PointSet::PointSet(std::vector<PointP1P1> pts) : pts_(std::move(pts)) {
  for (std::size_t a = 0; a < pts_.size(); ++a)
    for (std::size_t b = a + 1; b < pts_.size(); ++b)
      if (pts_[a] == pts_[b]) throw std::invalid_argument("repeated point " + pts_[a].to_string());
}

Rational evaluate(const BiForm& f, const PointP1P1& p) {
  return f.evaluate(p.first[0], p.first[1], p.second[0], p.second[1]);
}

QMatrix eval_matrix(const PointSet& X, Bidegree d) {
  const auto basis = mono_basis(d.i, d.j);
  QMatrix m(X.size(), basis.size());
  for (std::size_t r = 0; r < X.size(); ++r) {
    const auto& p = X[r];
    // Powers of each coordinate, then products.
    std::vector<Rational> ps(d.i + 1), pt(d.i + 1), pu(d.j + 1), pv(d.j + 1);
    ps[0] = pt[0] = pu[0] = pv[0] = 1;
    for (int k = 1; k <= d.i; ++k) {
      ps[k] = ps[k - 1] * p.first[0];
      pt[k] = pt[k - 1] * p.first[1];
    }
    for (int k = 1; k <= d.j; ++k) {
      pu[k] = pu[k - 1] * p.second[0];
      pv[k] = pv[k - 1] * p.second[1];
    }
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto& e = basis.monomials[c];
      m(r, c) = ps[e[0]] * pt[e[1]] * pu[e[2]] * pv[e[3]];
    }
  }
  return m;
}

std::size_t hilbert(const PointSet& X, Bidegree d) {
  if (X.empty()) return 0;
  return rank(eval_matrix(X, d));
}

std::vector<std::vector<std::size_t>> hilbert_table(const PointSet& X, int imax, int jmax) {
  std::vector<std::vector<std::size_t>> t(static_cast<std::size_t>(imax + 1),
                                          std::vector<std::size_t>(static_cast<std::size_t>(jmax + 1)));
  for (int i = 0; i <= imax; ++i)
    for (int j = 0; j <= jmax; ++j) t[i][j] = hilbert(X, {i, j});
  return t;
}

namespace {

Partition counts_by(const PointSet& X, bool first) {
  std::map<std::array<Rational, 2>, int> m;
  for (const auto& p : X.points()) ++m[first ? p.first : p.second];
  Partition out;
  for (const auto& [k, n] : m) out.push_back(n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

std::pair<Partition, Partition> partitions(const PointSet& X) { return {counts_by(X, true), counts_by(X, false)}; }

Partition conjugate(const Partition& lambda) {
  Partition out;
  if (lambda.empty()) return out;
  const int top = *std::max_element(lambda.begin(), lambda.end());
  for (int i = 1; i <= top; ++i)
    out.push_back(static_cast<int>(std::count_if(lambda.begin(), lambda.end(), [i](int x) { return x >= i; })));
  return out;
}

StabilizedReport stabilized_hilbert_check(const PointSet& X) {
  StabilizedReport rep;
  if (X.empty()) return rep;
  const auto [alpha, beta] = partitions(X);
  const Partition as = conjugate(alpha), bs = conjugate(beta);
  const int h = static_cast<int>(alpha.size());  // |pi_1(X)|
  const int n = static_cast<int>(beta.size());   // |pi_2(X)|
  auto partial = [](const Partition& p, int upto) {
    std::size_t s = 0;
    for (int k = 0; k < upto && k < static_cast<int>(p.size()); ++k) s += static_cast<std::size_t>(p[k]);
    return s;
  };
  const int jwin = static_cast<int>(as.size()) + 1;
  const int iwin = static_cast<int>(bs.size()) + 1;
  for (int i = h - 1; i <= h; ++i)
    for (int j = 0; j <= jwin; ++j) {
      const std::size_t want = partial(as, j + 1), got = hilbert(X, {i, j});
      if (want != got) {
        rep.pass = false;
        rep.detail = "H(" + std::to_string(i) + "," + std::to_string(j) + ")=" + std::to_string(got) +
                     ", expected " + std::to_string(want) + " from alpha*";
        return rep;
      }
    }
  for (int j = n - 1; j <= n; ++j)
    for (int i = 0; i <= iwin; ++i) {
      const std::size_t want = partial(bs, i + 1), got = hilbert(X, {i, j});
      if (want != got) {
        rep.pass = false;
        rep.detail = "H(" + std::to_string(i) + "," + std::to_string(j) + ")=" + std::to_string(got) +
                     ", expected " + std::to_string(want) + " from beta*";
        return rep;
      }
    }
  return rep;
}

bool is_generic(const PointSet& X) {
  const auto r = X.size();
  for (std::size_t i = 0; i + 1 <= r; ++i)
    for (std::size_t j = 0; j + 1 <= r; ++j) {
      const std::size_t want = std::min((i + 1) * (j + 1), r);
      if (hilbert(X, {static_cast<int>(i), static_cast<int>(j)}) != want) return false;
    }
  return true;
}

int stabilization_index_i(const PointSet& X, int j) {
  for (int t = 0;; ++t)
    if (hilbert(X, {t, j}) == hilbert(X, {t + 1, j})) return t;
}

int stabilization_index_j(const PointSet& X, int i) {
  for (int t = 0;; ++t)
    if (hilbert(X, {i, t}) == hilbert(X, {i, t + 1})) return t;
}

PointSet random_generic_points(std::size_t r, Rng& rng, PointRange range) {
  auto draw = [&]() {
    while (true) {
      Rational x0 = rng.uniform(range.lo, range.hi), x1 = rng.uniform(range.lo, range.hi);
      if (x0 != 0 || x1 != 0) return normalize_pair(x0, x1);
    }
  };
  constexpr int kAttempts = 200;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<std::array<Rational, 2>> firsts, seconds;
    int guard = 0;
    while (firsts.size() < r && guard++ < 100000) {
      auto a = draw();
      if (std::find(firsts.begin(), firsts.end(), a) == firsts.end()) firsts.push_back(a);
    }
    while (seconds.size() < r && guard++ < 200000) {
      auto b = draw();
      if (std::find(seconds.begin(), seconds.end(), b) == seconds.end()) seconds.push_back(b);
    }
    if (firsts.size() < r || seconds.size() < r) break;
    std::vector<PointP1P1> pts;
    for (std::size_t k = 0; k < r; ++k) pts.push_back({firsts[k], seconds[k]});
    PointSet X(std::move(pts));
    if (is_generic(X)) return X;
  }
  throw std::runtime_error("random_generic_points: could not draw a generic set; widen the coordinate range");
}

PointSet random_generic_points(std::size_t r, std::uint64_t seed, PointRange range) {
  Rng rng(seed);
  return random_generic_points(r, rng, range);
}

}  // namespace tpsimp
