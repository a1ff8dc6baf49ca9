#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tpsimp/rational.hpp"

namespace tpsimp {

/// Dense row-major matrix over the rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  /// Builds a matrix whose rows are the given vectors (all of equal length).
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<Rational> row_vector(std::size_t r) const;
  std::vector<Rational> column_vector(std::size_t c) const;

  QMatrix transpose() const;
  QMatrix select_columns(std::span<const std::size_t> cols) const;
  QMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Stacks `below` under this matrix (equal column counts).
  QMatrix stacked(const QMatrix& below) const;
  void append_row(std::span<const Rational> values);

  bool is_zero() const;
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator+(const QMatrix& a, const QMatrix& b);
std::vector<Rational> operator*(const QMatrix& a, std::span<const Rational> x);

struct Echelon {
  QMatrix reduced;                  ///< reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  ///< pivot column of each row of `reduced`
};

/// Reduced row echelon form with leftmost pivots and unit leading entries.
/// This is the canonical basis of the row space used throughout the library.
Echelon rref(QMatrix m);

std::size_t rank(const QMatrix& m);

/// Canonical (RREF) basis of the row space.
QMatrix canonical_basis(const QMatrix& rows);

/// Canonical basis of {x : m x = 0}, returned as rows.
QMatrix null_space(const QMatrix& m);

/// Reduces `v` against an RREF basis: the result has zeros in every pivot column.
std::vector<Rational> reduce_against(const Echelon& basis, std::vector<Rational> v);

/// True iff v lies in the row span of the given RREF basis.
bool in_span(const Echelon& basis, std::span<const Rational> v);

/// Solves x * m = b for a row vector x (m has the candidate rows). Returns
/// std::nullopt when b is not in the row space; picks the solution with free
/// coordinates set to zero otherwise.
std::optional<std::vector<Rational>> solve_row_combination(const QMatrix& m,
                                                          std::span<const Rational> b);

/// Exact determinant: fraction-free (Bareiss) elimination after clearing
/// row denominators.
Rational determinant(const QMatrix& m);

/// Determinant of an integer matrix given row-major (Bareiss).
Integer bareiss_determinant(std::vector<Integer> a, std::size_t n);

/// Scales v by a positive rational so that it is integral with content one.
std::vector<Rational> primitive_integral(std::vector<Rational> v);

}  // namespace tpsimp
