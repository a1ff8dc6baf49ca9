#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpsimp/bench.hpp"
#include "tpsimp/instance.hpp"
#include "tpsimp/report.hpp"

using namespace tpsimp;

TEST(InstanceJson, RoundTrip) {
  const Instance a = oracle::load("two_points_a3.json");
  EXPECT_EQ(a.a, 3);
  ASSERT_TRUE(a.U);
  EXPECT_FALSE(a.seed);
  const Instance b = parse_instance_json(instance_to_json(a));
  EXPECT_EQ(b.points.points(), a.points.points());
  EXPECT_EQ(*b.U, *a.U);
  EXPECT_EQ(instance_to_json(b), instance_to_json(a));

  const Instance r = make_random_instance(4, 3, 9);
  EXPECT_EQ(instance_to_json(parse_instance_json(instance_to_json(r))), instance_to_json(r));
}

TEST(InstanceJson, RationalCoordinates) {
  const Instance i = parse_instance_json(R"({"points": [[["1/2", 1], [3, "-2/3"]]], "a": 2, "seed": 4})");
  EXPECT_EQ(i.points[0], PointP1P1::make(Rational(1, 2), 1, 3, Rational(-2, 3)));
  EXPECT_EQ(i.seed, 4u);
}

TEST(InstanceJson, Rejections) {
  const char* bad[] = {
      R"({"points": [], "a": 2, "bogus": 1})",                              // unknown key
      R"({"points": [], "a": 0, "seed": 1})",                                // a < 1
      R"({"points": [], "a": 2, "seed": 1, "U": ["s^2*u","s^2*v","t^2*u","t^2*v"]})",  // both
      R"({"points": [[[0, 0], [1, 1]]], "a": 2})",                           // (0:0)
      R"({"points": [[[1, 1], [1, 1]], [[2, 2], [3, 3]]], "a": 2})",         // repeated point
      R"({"points": [[[1, 1]]], "a": 2})",                                   // malformed point
      R"({"points": [], "a": 2, "U": ["s^2*u"]})",                           // U needs four forms
      R"({"points": [], "a": "two"})",
      R"({"points": [[["1/0", 1], [1, 1]]], "a": 2})",
      "not json",
  };
  for (const char* text : bad) EXPECT_THROW(parse_instance_json(text), InputError) << text;
  EXPECT_NO_THROW(parse_instance_json(R"({"points": [], "a": 2, "seed": 1, "flags": {"x": 1}})"));
}

TEST(PointsJson, RoundTrip) {
  const PointSet X = random_generic_points(5, 2);
  EXPECT_EQ(parse_points_json(points_to_json(X)).points(), X.points());
}

TEST(ResultJson, ReproducibleWithoutTimings) {
  const Instance inst = make_random_instance(3, 2, 44);
  ReportOptions opt;
  opt.seed = inst.seed;
  const std::string a = result_to_json(implicitize(inst), opt);
  const std::string b = result_to_json(implicitize(inst), opt);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("timings_ms"), std::string::npos);
  opt.timings = true;
  EXPECT_NE(result_to_json(implicitize(inst), opt).find("timings_ms"), std::string::npos);
}
