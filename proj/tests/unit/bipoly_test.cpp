#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpsimp/bipoly.hpp"

using namespace tpsimp;

TEST(MonoBasis, OrderAndIndex) {
  const auto mb = mono_basis(2, 1);
  ASSERT_EQ(mb.size(), 6u);
  EXPECT_EQ(mb.monomials.front(), (Exponent4{2, 0, 1, 0}));
  EXPECT_EQ(mb.monomials.back(), (Exponent4{0, 2, 0, 1}));
  for (std::size_t k = 0; k < mb.size(); ++k) EXPECT_EQ(mb.index_of(mb.monomials[k]), k);
  EXPECT_EQ(bi_dim({3, 1}), 8u);
  EXPECT_EQ(bi_dim({-1, 1}), 0u);
}

TEST(BiForm, ParseFormatRoundTrip) {
  const BiForm f = BiForm::parse("7*s^2*v - 23*s*t*v + 6*t^2*u");
  EXPECT_EQ(f.bidegree(), (Bidegree{2, 1}));
  EXPECT_EQ(f.num_terms(), 3u);
  EXPECT_EQ(f.coeff({1, 1, 0, 1}), -23);
  EXPECT_EQ(BiForm::parse(f.to_string()), f);
  EXPECT_EQ(BiForm::parse("1/2*s*u+s*u"), BiForm::parse("3/2*s*u"));
  EXPECT_TRUE(BiForm::parse("0", {2, 1}).is_zero());
}

TEST(BiForm, ParseRejects) {
  EXPECT_THROW(BiForm::parse("s^2*u + s*u"), std::invalid_argument);  // not bihomogeneous
  EXPECT_THROW(BiForm::parse("s*X"), std::invalid_argument);           // mixed alphabets
  EXPECT_THROW(BiForm::parse("s*u", {2, 1}), std::invalid_argument);
  EXPECT_THROW(BiForm::parse("s**u"), std::invalid_argument);
  EXPECT_THROW(BiForm::parse("s^x"), std::invalid_argument);
  EXPECT_THROW(BiForm::parse("q*u"), std::invalid_argument);
  EXPECT_THROW(BiForm::parse("0"), std::invalid_argument);  // degree unknown
}

TEST(BiForm, ProductAndEvaluation) {
  const BiForm f = BiForm::parse("s*u - 2*t*v");
  const BiForm g = BiForm::parse("s^2 + 3*s*t");
  const BiForm fg = f * g;
  EXPECT_EQ(fg.bidegree(), (Bidegree{3, 1}));
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Rational s = rng.uniform(-9, 9), t = rng.uniform(-9, 9), u = rng.uniform(-9, 9), v = rng.uniform(-9, 9);
    EXPECT_EQ(fg.evaluate(s, t, u, v), oracle::naive_bi(f, s, t, u, v) * oracle::naive_bi(g, s, t, u, v));
    EXPECT_EQ(fg.evaluate(s, t, u, v), oracle::naive_bi(fg, s, t, u, v));
  }
}

TEST(SurfForm, IndexingMatchesEnumeration) {
  for (int d = 0; d <= 5; ++d) {
    const auto mons = surf_monomials(d);
    EXPECT_EQ(mons, oracle::monomials(d));
    EXPECT_EQ(surf_dim(d), mons.size());
    for (std::size_t k = 0; k < mons.size(); ++k) EXPECT_EQ(surf_index(d, mons[k]), k);
  }
  EXPECT_EQ(surf_dim(4), 35u);
}

TEST(SurfForm, NormalizeAndProportional) {
  const SurfForm h = SurfForm::parse("-2/3*X*W + 2/3*Y*Z");
  const SurfForm n = h.normalized();
  EXPECT_EQ(n, SurfForm::parse("X*W - Y*Z"));
  EXPECT_TRUE(n.is_normalized());
  EXPECT_FALSE(h.is_normalized());
  EXPECT_TRUE(h.proportional_to(n));
  EXPECT_FALSE(n.proportional_to(SurfForm::parse("X*W + Y*Z")));
  EXPECT_EQ(SurfForm::parse(n.to_string()), n);
  EXPECT_THROW(SurfForm::parse("X + Y^2"), std::invalid_argument);
}

TEST(SurfForm, SubstituteMatchesPointwise) {
  const std::array<BiForm, 4> f{BiForm::parse("s*u"), BiForm::parse("s*v"), BiForm::parse("t*u"),
                                BiForm::parse("t*v + s*u")};
  const SurfForm H = SurfForm::parse("X^2 - 3*Y*Z + W*X");
  const BiForm Hf = substitute_surface(H, f);
  EXPECT_EQ(Hf.bidegree(), (Bidegree{2, 2}));
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const Rational s = rng.uniform(-9, 9), t = rng.uniform(-9, 9), u = rng.uniform(-9, 9), v = rng.uniform(-9, 9);
    std::array<Rational, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = oracle::naive_bi(f[i], s, t, u, v);
    EXPECT_EQ(oracle::naive_bi(Hf, s, t, u, v), oracle::naive_surf(H, q));
  }
  // the Segre quadric: XW - YZ vanishes on (su, sv, tu, tv)
  const std::array<BiForm, 4> seg{BiForm::parse("s*u"), BiForm::parse("s*v"), BiForm::parse("t*u"),
                                  BiForm::parse("t*v")};
  EXPECT_TRUE(substitute_surface(SurfForm::parse("X*W-Y*Z"), seg).is_zero());
  const std::array<BiForm, 4> bad{BiForm::parse("s*u"), BiForm::parse("s^2*v"), BiForm::parse("t*u"),
                                  BiForm::parse("t*v")};
  EXPECT_THROW(substitute_surface(H, bad), std::invalid_argument);
}
