#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct Proc {
  int status = -1;
  std::string out;
};

Proc run(const std::string& args) {
  const std::string cmd = std::string(TPSIMP_CLI) + " " + args + " 2>/dev/null";
  Proc r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("tpsimp_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string tmp(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("implicitize " + oracle::fixture("two_points_a3.json") + " --method bogus").status, 2);
  EXPECT_EQ(run("implicitize /nonexistent/file.json").status, 2);

  std::ofstream(tmp("bad.json")) << R"({"points": [], "a": 2, "extra": true})";
  EXPECT_EQ(run("implicitize " + tmp("bad.json")).status, 2);

  // mathematical failure: nongeneric points
  std::ofstream(tmp("ng.json")) << R"({"points": [[[0,1],[0,1]], [[1,0],[1,0]], [[1,1],[1,1]], [[-1,1],[-1,1]]],
                                      "a": 3, "seed": 1})";
  const Proc ng = run("implicitize " + tmp("ng.json"));
  EXPECT_EQ(ng.status, 1);
}

TEST_F(Cli, ImplicitizeIsByteIdentical) {
  ASSERT_EQ(run("random-instance --a 3 --r 3 --seed 5 -o " + tmp("inst.json")).status, 0);
  ASSERT_EQ(run("implicitize " + tmp("inst.json") + " -o " + tmp("r1.json")).status, 0);
  ASSERT_EQ(run("implicitize " + tmp("inst.json") + " -o " + tmp("r2.json")).status, 0);
  const std::string a = slurp(tmp("r1.json"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(tmp("r2.json")));
  EXPECT_EQ(run("verify " + tmp("inst.json") + " --result " + tmp("r1.json")).status, 0);
}

TEST_F(Cli, VerifyAndMembership) {
  const std::string f = oracle::fixture("quadric_a3.json");
  EXPECT_EQ(run("verify " + f + " --H \"X*W-Y*Z\"").status, 0);
  EXPECT_EQ(run("verify " + f + " --H \"X*W+Y*Z\"").status, 1);
  EXPECT_EQ(run("verify " + f + " --H \"X*W+\"").status, 2);
  const Proc on = run("membership " + f + " --point 1,2,3,6");
  EXPECT_EQ(on.status, 0);
  EXPECT_NE(on.out.find("on_surface"), std::string::npos);
  const Proc off = run("membership " + f + " --point 1,2,3,7");
  EXPECT_EQ(off.status, 0);
  EXPECT_NE(off.out.find("off_surface"), std::string::npos);
  EXPECT_EQ(run("membership " + f + " --point 0,0,0,0").status, 2);
}

TEST_F(Cli, AnalyzeAndBases) {
  const Proc a = run("analyze-points " + oracle::fixture("four_generic.json") + " --format json");
  EXPECT_EQ(a.status, 0);
  EXPECT_NE(a.out.find("generic"), std::string::npos);
  EXPECT_EQ(run("ideal-basis " + oracle::fixture("four_generic.json")).status, 0);
  EXPECT_EQ(run("mu-basis " + oracle::fixture("two_points_a3.json")).status, 0);
}

TEST_F(Cli, ElimAndBench) {
  const std::string f = oracle::fixture("quadric_a3.json");
  const Proc e = run("implicitize " + f + " --method elimination --format text");
  EXPECT_EQ(e.status, 0);
  EXPECT_NE(e.out.find("X*W-Y*Z"), std::string::npos);
  const Proc b = run("bench --a 3 --r 2 --seed 1 --methods alg1,alg2 --d1-only");
  EXPECT_EQ(b.status, 0);
  EXPECT_NE(b.out.find("alg2"), std::string::npos);
}
