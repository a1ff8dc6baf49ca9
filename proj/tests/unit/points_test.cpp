#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpsimp/points.hpp"

using namespace tpsimp;

using Table = std::vector<std::vector<std::size_t>>;

namespace {

PointSet pts(const char* name) { return oracle::load_points(name); }

// Rank of the evaluation matrix via cofactor-free elimination: an independent
// count of independent conditions the points impose in bidegree (i,j).
std::size_t brute_hilbert(const PointSet& X, int i, int j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : X.points()) {
    std::vector<Rational> row;
    for (int a = 0; a <= i; ++a)
      for (int b = 0; b <= j; ++b) {
        Rational x = 1;
        for (int k = 0; k < i - a; ++k) x *= p.first[0];
        for (int k = 0; k < a; ++k) x *= p.first[1];
        for (int k = 0; k < j - b; ++k) x *= p.second[0];
        for (int k = 0; k < b; ++k) x *= p.second[1];
        row.push_back(x);
      }
    rows.push_back(row);
  }
  return rank(QMatrix::from_rows(rows, static_cast<std::size_t>((i + 1) * (j + 1))));
}

}  // namespace

TEST(Points, NormalizationAndDistinctness) {
  const auto p = PointP1P1::make(6, 3, 0, -2);
  EXPECT_EQ(p.first, (std::array<Rational, 2>{1, Rational(1, 2)}));
  EXPECT_EQ(p.second, (std::array<Rational, 2>{0, 1}));
  EXPECT_THROW(PointP1P1::make(0, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(PointSet({PointP1P1::make(1, 2, 3, 4), PointP1P1::make(2, 4, 6, 8)}), std::invalid_argument);
}

TEST(Points, GridTableRowsAndColumns) {
  const PointSet X = pts("grid13.json");
  ASSERT_EQ(X.size(), 13u);
  const Table t = hilbert_table(X, 4, 6);
  const std::vector<std::size_t> row{4, 8, 11, 13, 13, 13, 13};
  EXPECT_EQ(t[3], row);
  EXPECT_EQ(t[4], row);
  const std::size_t col[3] = {6, 12, 13};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(t[i][5], col[i]);
    EXPECT_EQ(t[i][6], col[i]);
  }
  const auto [alpha, beta] = partitions(X);
  EXPECT_EQ(alpha, (Partition{4, 4, 3, 2}));
  EXPECT_EQ(beta, (Partition{3, 2, 2, 2, 2, 2}));
  EXPECT_EQ(conjugate(alpha), (Partition{4, 4, 3, 2}));
  EXPECT_EQ(conjugate(beta), (Partition{6, 6, 1}));
  EXPECT_TRUE(stabilized_hilbert_check(X).pass);
  EXPECT_FALSE(is_generic(X));
}

TEST(Points, FourGenericPointsTable) {
  const PointSet X = pts("four_generic.json");
  const Table expect{{1, 2, 3, 4, 4}, {2, 4, 4, 4, 4}, {3, 4, 4, 4, 4}, {4, 4, 4, 4, 4}, {4, 4, 4, 4, 4}};
  EXPECT_EQ(hilbert_table(X, 4, 4), expect);
  EXPECT_TRUE(is_generic(X));
}

TEST(Points, NongenericTable) {
  const PointSet X = pts("four_nongeneric.json");
  const Table expect{{1, 2, 3, 4, 4}, {2, 3, 4, 4, 4}, {3, 4, 4, 4, 4}, {4, 4, 4, 4, 4}, {4, 4, 4, 4, 4}};
  EXPECT_EQ(hilbert_table(X, 4, 4), expect);
  EXPECT_FALSE(is_generic(X));
  // same line counts as the generic set
  EXPECT_EQ(partitions(X), partitions(pts("four_generic.json")));
}

TEST(Points, TableAgreesWithBruteRank) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const PointSet X = random_generic_points(5 + seed, seed);
    const Table t = hilbert_table(X, 4, 4);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) {
        EXPECT_EQ(t[i][j], brute_hilbert(X, i, j));
        EXPECT_EQ(t[i][j], std::min<std::size_t>((i + 1) * (j + 1), X.size()));
      }
    EXPECT_TRUE(stabilized_hilbert_check(X).pass);
  }
}

TEST(Points, StabilizationIndices) {
  const PointSet X = pts("four_generic.json");
  EXPECT_EQ(stabilization_index_i(X, 0), 3);
  EXPECT_EQ(stabilization_index_i(X, 1), 1);
  EXPECT_EQ(stabilization_index_j(X, 0), 3);
}

TEST(Points, RandomPointsAreReproducible) {
  const PointSet a = random_generic_points(6, 99), b = random_generic_points(6, 99);
  EXPECT_EQ(a.points(), b.points());
  EXPECT_TRUE(is_generic(a));
  EXPECT_TRUE(random_generic_points(0, 1).empty());
}
