#include "tpsimp/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tpsimp {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("QMatrix::from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<Rational> QMatrix::row_vector(std::size_t r) const {
  auto v = row(r);
  return {v.begin(), v.end()};
}

std::vector<Rational> QMatrix::column_vector(std::size_t c) const {
  std::vector<Rational> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::select_columns(std::span<const std::size_t> cols) const {
  QMatrix m(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = (*this)(r, cols[c]);
  return m;
}

QMatrix QMatrix::select_rows(std::span<const std::size_t> rows) const {
  QMatrix m(rows.size(), cols_);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(rows[r], c);
  return m;
}

QMatrix QMatrix::stacked(const QMatrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (below.cols_ != cols_) throw std::invalid_argument("QMatrix::stacked: column mismatch");
  QMatrix m(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

void QMatrix::append_row(std::span<const Rational> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw std::invalid_argument("QMatrix::append_row: length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("QMatrix product: dimension mismatch");
  QMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) m(i, j) += a(i, k) * b(k, j);
      }
    }
  return m;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("QMatrix sum: shape mismatch");
  QMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
  return m;
}

std::vector<Rational> operator*(const QMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("QMatrix-vector product: dimension mismatch");
  std::vector<Rational> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0 && x[k] != 0) y[i] += a(i, k) * x[k];
  return y;
}

namespace {

using IntRow = std::vector<Integer>;

IntRow integral_row(std::span<const Rational> row) {
  Integer l = 1;
  for (const auto& q : row)
    if (q.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntRow out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == 0) continue;
    out[i] = row[i].get_num() * (l / row[i].get_den());
  }
  return out;
}

void make_primitive(IntRow& row) {
  Integer g = 0;
  for (const auto& z : row) {
    if (z == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (auto& z : row)
    if (z != 0) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
}

// row <- p * row - f * pivot_row, where p = pivot_row[c] and f = row[c].
void eliminate(IntRow& row, const IntRow& pivot_row, std::size_t c) {
  Integer p = pivot_row[c];
  Integer f = row[c];
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), f.get_mpz_t());
  if (g != 1) {
    mpz_divexact(p.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(f.get_mpz_t(), f.get_mpz_t(), g.get_mpz_t());
  }
  Integer tmp;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (pivot_row[j] == 0) {
      if (row[j] != 0 && p != 1) row[j] *= p;
      continue;
    }
    if (row[j] != 0 && p != 1) row[j] *= p;
    mpz_submul(row[j].get_mpz_t(), f.get_mpz_t(), pivot_row[j].get_mpz_t());
  }
  row[c] = 0;
  make_primitive(row);
}

}  // namespace

Echelon rref(QMatrix m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<IntRow> rows;
  rows.reserve(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    rows.push_back(integral_row(m.row(r)));
    make_primitive(rows.back());
  }

  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < nc && top < nr; ++c) {
    std::size_t best = nr;
    std::size_t best_size = 0;
    for (std::size_t r = top; r < nr; ++r) {
      if (rows[r][c] == 0) continue;
      std::size_t sz = mpz_size(rows[r][c].get_mpz_t());
      if (best == nr || sz < best_size) {
        best = r;
        best_size = sz;
      }
    }
    if (best == nr) continue;
    std::swap(rows[top], rows[best]);
    for (std::size_t r = top + 1; r < nr; ++r)
      if (rows[r][c] != 0) eliminate(rows[r], rows[top], c);
    pivots.push_back(c);
    ++top;
  }

  const std::size_t rk = pivots.size();
  for (std::size_t i = rk; i-- > 0;) {
    for (std::size_t k = 0; k < i; ++k)
      if (rows[k][pivots[i]] != 0) eliminate(rows[k], rows[i], pivots[i]);
  }

  Echelon e;
  e.reduced = QMatrix(rk, nc);
  for (std::size_t i = 0; i < rk; ++i) {
    const Integer& lead = rows[i][pivots[i]];
    for (std::size_t j = 0; j < nc; ++j) {
      if (rows[i][j] == 0) continue;
      Rational q(rows[i][j], lead);
      q.canonicalize();
      e.reduced(i, j) = q;
    }
  }
  e.pivots = std::move(pivots);
  return e;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

QMatrix canonical_basis(const QMatrix& rows) { return rref(rows).reduced; }

QMatrix null_space(const QMatrix& m) {
  const std::size_t nc = m.cols();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(nc, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  QMatrix basis;
  std::vector<Rational> v(nc);
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    std::fill(v.begin(), v.end(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.append_row(v);
  }
  if (basis.rows() == 0) return QMatrix(0, nc);
  return canonical_basis(basis);
}

std::vector<Rational> reduce_against(const Echelon& basis, std::vector<Rational> v) {
  for (std::size_t i = 0; i < basis.pivots.size(); ++i) {
    const std::size_t p = basis.pivots[i];
    if (v[p] == 0) continue;
    Rational f = v[p];
    auto row = basis.reduced.row(i);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (row[j] != 0) v[j] -= f * row[j];
  }
  return v;
}

bool in_span(const Echelon& basis, std::span<const Rational> v) {
  auto r = reduce_against(basis, std::vector<Rational>(v.begin(), v.end()));
  return std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; });
}

std::optional<std::vector<Rational>> solve_row_combination(const QMatrix& m, std::span<const Rational> b) {
  // x m = b  <=>  m^T x^T = b^T; augment and eliminate.
  const std::size_t n = m.rows();
  QMatrix aug(m.cols(), n + 1);
  for (std::size_t r = 0; r < m.cols(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(c, r);
    aug(r, n) = b[r];
  }
  Echelon e = rref(aug);
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == n) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, n);
  }
  return x;
}

Integer bareiss_determinant(std::vector<Integer> a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r * n + k] == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
      sign = -sign;
    }
    const Integer& piv = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer& x = a[i * n + j];
        x *= piv;
        mpz_submul(x.get_mpz_t(), a[i * n + k].get_mpz_t(), a[k * n + j].get_mpz_t());
        if (prev != 1) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = piv;
  }
  Integer d = a[n * n - 1];
  if (sign < 0) d = -d;
  return d;
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  std::vector<Integer> a(n * n);
  Integer scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    auto row = m.row(r);
    Integer l = 1;
    for (const auto& q : row)
      if (q.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    scale *= l;
    for (std::size_t c = 0; c < n; ++c)
      if (row[c] != 0) a[r * n + c] = row[c].get_num() * (l / row[c].get_den());
  }
  Rational d(bareiss_determinant(std::move(a), n), scale);
  d.canonicalize();
  return d;
}

std::vector<Rational> primitive_integral(std::vector<Rational> v) {
  Integer l = denominator_lcm(v);
  Integer g = 0;
  for (auto& q : v) {
    q *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (g > 1)
    for (auto& q : v) q /= g;
  return v;
}

}  // namespace tpsimp
