#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpsimp/baseline_gb.hpp"
#include "tpsimp/bench.hpp"
#include "tpsimp/complex.hpp"

using namespace tpsimp;

namespace {

enum { S, T, U, V, X, Y, Z, W };

MPoly8 var(int i) { return MPoly8::variable(i); }
MPoly8 c(const Rational& q) { return MPoly8::constant(q); }

}  // namespace

TEST(Mono8, BlockOrder) {
  const Mono8 s{1, 0, 0, 0, 0, 0, 0, 0};
  const Mono8 x3{0, 0, 0, 0, 3, 0, 0, 0};
  const Mono8 t{0, 1, 0, 0, 0, 0, 0, 0};
  const Mono8 xy{0, 0, 0, 0, 1, 1, 0, 0};
  const Mono8 xz{0, 0, 0, 0, 1, 0, 1, 0};
  EXPECT_GT(compare_mono8(s, x3), 0);  // any parameter beats any X-monomial
  EXPECT_GT(compare_mono8(s, t), 0);
  EXPECT_GT(compare_mono8(xy, xz), 0);  // grevlex within the block
  EXPECT_EQ(compare_mono8(xy, xy), 0);
  const Mono8 yy{0, 0, 0, 0, 0, 2, 0, 0}, xw{0, 0, 0, 0, 1, 0, 0, 1};
  EXPECT_GT(compare_mono8(yy, xw), 0);  // grevlex: smaller last variable power wins
}

TEST(MPoly8, Arithmetic) {
  const MPoly8 p = var(X) - c(1);
  const MPoly8 q = var(X) + c(1);
  EXPECT_EQ(p * q, var(X) * var(X) - c(1));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((c(3) * var(Y)).monic(), var(Y));
  EXPECT_TRUE((var(X) * var(Y)).free_of_params());
  EXPECT_FALSE((var(X) * var(S)).free_of_params());
  EXPECT_EQ((var(X) * var(S) + c(2)).total_degree(), 2);
}

TEST(Buchberger, AlreadyABasis) {
  // leading terms s and t are coprime: nothing to do
  const std::vector<MPoly8> G{var(X) - var(S), var(Y) - var(T)};
  EXPECT_TRUE(is_groebner_basis(G));
  const auto B = buchberger(G, 100);
  ASSERT_EQ(B.size(), 2u);
  EXPECT_TRUE(is_groebner_basis(B));
  for (const auto& g : G) EXPECT_TRUE(normal_form(g, B).is_zero());
}

TEST(Buchberger, MonomialIdeal) {
  const auto B = buchberger({var(S) * var(S), var(S) * var(T)}, 100);
  ASSERT_EQ(B.size(), 2u);
  EXPECT_EQ(B[0], var(S) * var(T));
  EXPECT_EQ(B[1], var(S) * var(S));
}

TEST(Buchberger, ReducedBasisAndMembership) {
  // <x^2 - y, x y - 1> contains y^2 - x
  const MPoly8 f = var(X) * var(X) - var(Y), g = var(X) * var(Y) - c(1);
  const auto B = buchberger({f, g}, 1000);
  EXPECT_TRUE(is_groebner_basis(B));
  EXPECT_TRUE(normal_form(var(Y) * var(Y) - var(X), B).is_zero());
  EXPECT_FALSE(normal_form(var(X) - var(Y), B).is_zero());
  for (const auto& b : B) EXPECT_EQ(b.lead_coeff(), 1);
  EXPECT_TRUE(normal_form(s_polynomial(f, g), B).is_zero());
}

TEST(Buchberger, StepCap) {
  const MPoly8 f = var(X) * var(X) - var(Y), g = var(X) * var(Y) - c(1);
  EXPECT_THROW(buchberger({f, g}, 0), StepCapExceeded);
}

TEST(Elimination, Quadric) {
  const Instance inst = oracle::load("quadric_a3.json");
  std::array<BiForm, 4> f;
  for (int i = 0; i < 4; ++i) f[i] = BiForm::parse((*inst.U)[i]);
  const auto e = eliminate_params(f, 20000);
  EXPECT_EQ(e.H, SurfForm::parse("X*W - Y*Z"));
}

TEST(Elimination, AgreesWithInterpolation) {
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const Instance inst = make_random_instance(2, seed, seed);
    const PipelineResult res = implicitize(inst);
    const auto e = eliminate_params(res.U.f, 20000);
    const auto ref = oracle::implicit_by_interpolation(res.U.f, 4 - static_cast<int>(seed), 3);
    ASSERT_TRUE(ref);
    EXPECT_TRUE(e.H.proportional_to(*ref));
  }
}
