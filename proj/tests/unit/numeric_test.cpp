#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpsimp/interpolate.hpp"
#include "tpsimp/matrix.hpp"
#include "tpsimp/modp.hpp"
#include "tpsimp/rational.hpp"
#include "tpsimp/upoly.hpp"

using namespace tpsimp;

namespace {

QMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng, int bound = 9) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Rational(rng.uniform(-bound, bound), rng.uniform(1, 4));
      m(i, j).canonicalize();
    }
  return m;
}

std::vector<std::vector<Rational>> rows_of(const QMatrix& m) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row_vector(i));
  return out;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("22/7"), Rational(22, 7));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1 /2"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Rational, ContentAndLcm) {
  EXPECT_EQ(content({Integer(12), Integer(-18), Integer(0)}), 6);
  EXPECT_EQ(content({Integer(0), Integer(0)}), 0);
  EXPECT_EQ(denominator_lcm({Rational(1, 4), Rational(5, 6), Rational(2)}), 12);
}

TEST(Rng, SequenceIsFixed) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(-5, 5), b.uniform(-5, 5));
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const auto x = c.uniform(-3, 7);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 7);
  }
}

TEST(Matrix, DeterminantMatchesCofactorExpansion) {
  Rng rng(5);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const QMatrix m = random_matrix(n, n, rng);
      EXPECT_EQ(determinant(m), oracle::cofactor_det(rows_of(m))) << "n=" << n;
    }
}

TEST(Matrix, BareissIntegerDeterminant) {
  Rng rng(6);
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<Integer> a(n * n);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a[i * n + j] = rng.uniform(-30, 30);
        rows[i][j] = Rational(a[i * n + j]);
      }
    EXPECT_EQ(Rational(bareiss_determinant(a, n)), oracle::cofactor_det(rows));
  }
}

TEST(Matrix, NullSpaceIsKernelOfRightDimension) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    // rank-deficient by construction: product of 5x3 and 3x7
    const QMatrix m = random_matrix(5, 3, rng) * random_matrix(3, 7, rng);
    const QMatrix K = null_space(m);
    EXPECT_EQ(rank(m), 3u);
    EXPECT_EQ(K.rows(), 4u);
    EXPECT_TRUE((m * K.transpose()).is_zero());
    EXPECT_EQ(rank(K), K.rows());
  }
}

TEST(Matrix, RrefIsCanonical) {
  QMatrix m = QMatrix::from_rows({{2, 4, 6}, {1, 2, 4}, {3, 6, 10}});
  const Echelon e = rref(m);
  ASSERT_EQ(e.reduced.rows(), 2u);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(e.reduced.row_vector(0), (std::vector<Rational>{1, 2, 0}));
  EXPECT_EQ(e.reduced.row_vector(1), (std::vector<Rational>{0, 0, 1}));
  EXPECT_TRUE(in_span(e, std::vector<Rational>{5, 10, -1}));
  EXPECT_FALSE(in_span(e, std::vector<Rational>{0, 1, 0}));
}

TEST(Matrix, SolveRowCombination) {
  const QMatrix m = QMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
  const auto x = solve_row_combination(m, std::vector<Rational>{3, -2, 1});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (std::vector<Rational>{3, -2}));
  EXPECT_FALSE(solve_row_combination(m, std::vector<Rational>{1, 1, 0}));
}

TEST(Matrix, PrimitiveIntegral) {
  EXPECT_EQ(primitive_integral({Rational(1, 2), Rational(-3, 4), 0}), (std::vector<Rational>{2, -3, 0}));
}

TEST(ModP, FieldArithmetic) {
  const PrimeField F(1000000007);
  const auto a = F.from_u64(123456789), b = F.from_u64(987654321);
  EXPECT_EQ(F.to_u64(F.mul(a, b)), (123456789ULL * 987654321ULL) % 1000000007ULL);
  EXPECT_EQ(F.to_u64(F.mul(a, F.inv(a))), 1u);
  EXPECT_EQ(F.to_u64(F.sub(a, b)), (123456789ULL + 1000000007ULL - 987654321ULL) % 1000000007ULL);
  const auto h = F.from_rational(Rational(1, 2));
  ASSERT_TRUE(h);
  EXPECT_EQ(F.to_u64(F.add(*h, *h)), 1u);
  EXPECT_FALSE(F.from_rational(Rational(1, 1000000007)));
}

TEST(ModP, PrimeSequenceIsPrimeAndDescending) {
  PrimeSequence seq;
  std::uint64_t prev = std::uint64_t{1} << 62;
  for (int i = 0; i < 5; ++i) {
    const auto p = seq.next();
    EXPECT_TRUE(is_prime_u64(p));
    EXPECT_LT(p, prev);
    prev = p;
  }
  EXPECT_FALSE(is_prime_u64(1));
  EXPECT_FALSE(is_prime_u64(561));
  EXPECT_TRUE(is_prime_u64(2305843009213693951ULL));  // 2^61 - 1
}

TEST(ModP, DeterminantAndRankReduceExactValues) {
  Rng rng(8);
  PrimeSequence seq;
  const PrimeField F(seq.next());
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    std::vector<std::uint64_t> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto x = rng.uniform(-20, 20);
        rows[i][j] = x;
        a[i * n + j] = *F.from_rational(Rational(x));
      }
    const Rational d = oracle::cofactor_det(rows);
    EXPECT_EQ(det_mod(F, a, n), *F.from_rational(d));
  }
  // rank 2 matrix
  std::vector<std::uint64_t> m;
  for (int x : {1, 2, 3, 2, 4, 6, 0, 1, 1}) m.push_back(F.from_u64(static_cast<std::uint64_t>(x)));
  EXPECT_EQ(rank_mod(F, m, 3, 3), 2u);
}

TEST(ModP, CrtAndRationalReconstruction) {
  const Rational target(-123456787, 987654);
  PrimeSequence seq;
  std::vector<Integer> acc(1);
  Integer M = 0;
  for (int i = 0; i < 2; ++i) {
    const std::uint64_t p = seq.next();
    const PrimeField F(p);
    const std::uint64_t r = F.to_u64(*F.from_rational(target));
    crt_accumulate(acc, M, std::vector<std::uint64_t>{r}, p);
  }
  const auto q = rational_reconstruct(acc[0], M);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, target);
}

TEST(Interpolate, RecoversTrivariatePolynomial) {
  // F = 3x^2 y - 5 y z + 7 z^3 - 2, total degree 3
  PrimeSequence seq;
  const PrimeField F(seq.next());
  const int D = 3;
  std::array<std::vector<std::uint64_t>, 3> nodes;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i <= D; ++i) nodes[a].push_back(F.from_u64(static_cast<std::uint64_t>(10 * a + i + 2)));
  LowerSetInterpolator ip(F, D, nodes);
  auto fm = [&](std::int64_t c) { return *F.from_rational(Rational(c)); };
  std::vector<std::uint64_t> v(ip.value_size(), 0);
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j)
      for (int k = 0; i + j + k <= D; ++k) {
        const auto x = nodes[0][i], y = nodes[1][j], z = nodes[2][k];
        std::uint64_t val = F.mul(fm(3), F.mul(F.mul(x, x), y));
        val = F.sub(val, F.mul(fm(5), F.mul(y, z)));
        val = F.add(val, F.mul(fm(7), F.mul(z, F.mul(z, z))));
        val = F.sub(val, fm(2));
        v[ip.pos(i, j, k)] = val;
      }
  ip.solve(v);
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j)
      for (int k = 0; i + j + k <= D; ++k) {
        std::int64_t expect = 0;
        if (i == 2 && j == 1 && k == 0) expect = 3;
        if (i == 0 && j == 1 && k == 1) expect = -5;
        if (i == 0 && j == 0 && k == 3) expect = 7;
        if (i == 0 && j == 0 && k == 0) expect = -2;
        EXPECT_EQ(v[ip.pos(i, j, k)], fm(expect)) << i << j << k;
      }
}

TEST(Interpolate, LifterReconstructsVector) {
  const std::vector<Rational> target{Rational(1), Rational(-7, 3), Rational(Integer("123456789012345"), 11), Rational(0)};
  RationalLifter lift(target.size());
  PrimeSequence seq;
  // accepted once two consecutive primes give the same reconstruction
  std::optional<std::vector<Rational>> got, prev;
  for (int i = 0; i < 8; ++i) {
    const std::uint64_t p = seq.next();
    const PrimeField F(p);
    std::vector<std::uint64_t> res;
    for (const auto& q : target) res.push_back(F.to_u64(*F.from_rational(q)));
    lift.add_image(res, p);
    got = lift.try_reconstruct();
    if (got && prev && *got == *prev) break;
    prev = got;
  }
  ASSERT_TRUE(got);
  EXPECT_EQ(*got, target);
}

TEST(UPoly, SquarefreeAndPowers) {
  // (x-1)^2 (x+2)^3
  const UPoly a({-1, 1}), b({2, 1});
  auto mul = [](const UPoly& p, const UPoly& q) {
    std::vector<Rational> c(p.coeffs().size() + q.coeffs().size() - 1);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
      for (std::size_t j = 0; j < q.coeffs().size(); ++j) c[i + j] += p.coeffs()[i] * q.coeffs()[j];
    return UPoly(c);
  };
  const UPoly f = mul(mul(a, a), mul(b, mul(b, b)));
  const auto sq = squarefree_decomposition(f);
  ASSERT_EQ(sq.size(), 2u);
  EXPECT_EQ(sq[0].first, a);
  EXPECT_EQ(sq[0].second, 2);
  EXPECT_EQ(sq[1].first, b);
  EXPECT_EQ(sq[1].second, 3);
  EXPECT_EQ(perfect_power_exponent(f), 1);
  const UPoly g = mul(mul(a, b), mul(a, b));
  EXPECT_EQ(perfect_power_exponent(mul(g, g)), 4);
  EXPECT_EQ(gcd(f, f.derivative()), mul(a, mul(b, b)).monic());
}
