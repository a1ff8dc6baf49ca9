#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "tpsimp/bipoly.hpp"
#include "tpsimp/matrix.hpp"
#include "tpsimp/rational.hpp"

namespace tpsimp {

/// A point ((A0:A1),(B0:B1)) of P^1 x P^1 with the first nonzero coordinate
/// of each factor scaled to one.
struct PointP1P1 {
  std::array<Rational, 2> first;
  std::array<Rational, 2> second;

  /// Normalizes an arbitrary representative; throws if a factor is (0,0).
  static PointP1P1 make(Rational a0, Rational a1, Rational b0, Rational b1);

  friend bool operator==(const PointP1P1&, const PointP1P1&) = default;
  std::string to_string() const;
};

/// Distinct points; the constructor rejects repeats.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<PointP1P1> pts);

  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const std::vector<PointP1P1>& points() const { return pts_; }
  const PointP1P1& operator[](std::size_t k) const { return pts_[k]; }

 private:
  std::vector<PointP1P1> pts_;
};

using Partition = std::vector<int>;

Rational evaluate(const BiForm& f, const PointP1P1& p);

/// r x (i+1)(j+1) matrix of monomial values; columns follow mono_basis(i,j).
QMatrix eval_matrix(const PointSet& X, Bidegree d);

std::size_t hilbert(const PointSet& X, Bidegree d);

/// table[i][j] = H_X(i,j) for 0 <= i <= imax, 0 <= j <= jmax.
std::vector<std::vector<std::size_t>> hilbert_table(const PointSet& X, int imax, int jmax);

/// (alpha, beta): point counts on the lines of constant first, resp. second,
/// coordinate, sorted weakly decreasing.
std::pair<Partition, Partition> partitions(const PointSet& X);

Partition conjugate(const Partition& lambda);

struct StabilizedReport {
  bool pass = true;
  std::string detail;  ///< first counterexample when !pass
};

/// Checks H(i,j) = alpha*_1 + ... + alpha*_(j+1) for i >= |pi_1(X)|-1 and the
/// symmetric statement for beta*, over a window wide enough to see both
/// plateaus.
StabilizedReport stabilized_hilbert_check(const PointSet& X);

/// H(i,j) = min((i+1)(j+1), r) on [0, r-1]^2 (monotonicity covers the rest).
bool is_generic(const PointSet& X);

/// min{t : H(t,j) = H(t+1,j)}.
int stabilization_index_i(const PointSet& X, int j);
/// min{t : H(i,t) = H(i,t+1)}.
int stabilization_index_j(const PointSet& X, int i);

struct PointRange {
  std::int64_t lo = -50;
  std::int64_t hi = 50;
};

/// r points with pairwise distinct first and second coordinates, redrawn until
/// is_generic holds. Throws std::runtime_error after too many attempts.
PointSet random_generic_points(std::size_t r, Rng& rng, PointRange range = {});
PointSet random_generic_points(std::size_t r, std::uint64_t seed, PointRange range = {});

}  // namespace tpsimp
