// Acceptance run: one PASS/FAIL line per criterion. `--only N` (repeatable)
// restricts the run; the exit status is nonzero if any selected criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tpsimp/baseline_gb.hpp"
#include "tpsimp/bench.hpp"
#include "tpsimp/complex.hpp"
#include "tpsimp/errors.hpp"
#include "tpsimp/instance.hpp"
#include "tpsimp/points.hpp"

using namespace tpsimp;

namespace {

using Clock = std::chrono::steady_clock;

std::string fixture(const std::string& name) { return std::string(TPSIMP_FIXTURES) + "/" + name; }
Instance load(const std::string& name) { return parse_instance_json(read_file(fixture(name))); }
PointSet load_points(const std::string& name) { return parse_points_json(read_file(fixture(name))); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Outcome&)> body;
};

// reference tables
using Table = std::vector<std::vector<std::size_t>>;

void c1(Outcome& o) {
  const Table grid = hilbert_table(load_points("grid13.json"), 4, 6);
  const std::vector<std::size_t> row{4, 8, 11, 13, 13, 13, 13};
  o.check(grid[3] == row && grid[4] == row, "grid rows 3,4");
  const std::size_t col[3] = {6, 12, 13};
  for (int i = 0; i < 3; ++i) o.check(grid[i][5] == col[i] && grid[i][6] == col[i], "grid columns 5,6");
  o.check(hilbert_table(load_points("four_generic.json"), 4, 4) ==
              Table{{1, 2, 3, 4, 4}, {2, 4, 4, 4, 4}, {3, 4, 4, 4, 4}, {4, 4, 4, 4, 4}, {4, 4, 4, 4, 4}},
          "generic four-point table");
  o.check(hilbert_table(load_points("four_nongeneric.json"), 4, 4) ==
              Table{{1, 2, 3, 4, 4}, {2, 3, 4, 4, 4}, {3, 4, 4, 4, 4}, {4, 4, 4, 4, 4}, {4, 4, 4, 4, 4}},
          "nongeneric four-point table");
}

void c2(Outcome& o) {
  const GradedPiece P = ideal_piece(load_points("four_generic.json"), {2, 1});
  o.check(P.dim() == 2, "dim (I_X)_(2,1) = " + std::to_string(P.dim()));
  for (const char* g : {"6*t^2*u+7*s^2*v-23*s*t*v", "2*s*t*u-3*s^2*v+7*s*t*v"})
    o.check(solve_row_combination(P.matrix(), BiForm::parse(g).coeffs()).has_value(), std::string(g) + " not in span");
}

const char* kReference =
    "-8831798120631365*X^3*Y + 623043212873630840*X^2*Y^2 - 2432437780569525764*X*Y^3"
    " + 154155021741929280*X^2*Y*Z - 2181293557648299312*X*Y^2*Z - 694982223019864504*Y^3*Z"
    " - 516419322835463088*X*Y*Z^2 - 679406142698023733*Y^2*Z^2 - 167804164291995935*Y*Z^3"
    " + 29064644724259583*X^2*Y*W - 2253232567794532976*X*Y^2*W + 347491111509932252*Y^3*W"
    " + 8831798120631365*X^2*Z*W - 1142192364219107259*X*Y*Z*W - 288398353175526028*Y^2*Z*W"
    " - 109996031138772455*X*Z^2*W - 277318460987824861*Y*Z^2*W - 33560832858399187*Z^3*W"
    " + 8831798120631365*X^2*W^2 - 417342605736743957*X*Y*W^2 + 335768906731639713*Y^2*W^2"
    " - 103733483380506578*X*Z*W^2 + 6583704053561563*Y*Z*W^2 - 20232846603628218*Z^2*W^2"
    " - 20232846603628218*X*W^3 + 65676462387967787*Y*W^3 + 3693297395900389*Z*W^3"
    " + 3693297395900389*W^4";

void c3(Outcome& o) {
  const PipelineResult res = implicitize(load("two_points_a3.json"));
  const SurfForm& H = res.result.H;
  const SurfForm ref = SurfForm::parse(kReference, 4);
  o.check(H.degree() == 4, "degree " + std::to_string(H.degree()));
  if (H.degree() != 4) return;
  const Exponent4 anchor{0, 0, 0, 4};
  o.check(ref.coeff(anchor) == Integer("3693297395900389"), "anchor coefficient");
  o.check(H.coeff(anchor) != 0, "anchor coefficient of H is zero");
  if (H.coeff(anchor) == 0) return;
  const Rational k = ref.coeff(anchor) / H.coeff(anchor);
  std::size_t equal = 0;
  for (const auto& m : surf_monomials(4))
    if (H.coeff(m) * k == ref.coeff(m)) ++equal;
  o.check(equal == 35, std::to_string(equal) + "/35 coefficient ratios equal");
  o.check(H.num_terms() == 28 && ref.num_terms() == 28, "support size");
  o.detail << (o.detail.tellp() > 0 ? "; " : "") << "ratio " << to_string(k);
}

void c4(Outcome& o) {
  Rng rng(2025);
  int done = 0;
  for (int n = 0; n < 25; ++n) {
    const auto r = static_cast<std::size_t>(rng.uniform(0, 8));
    const int a = static_cast<int>(rng.uniform(static_cast<std::int64_t>((r + 1) / 2) + 1, 6));
    const Instance inst = make_random_instance(a, r, 500 + static_cast<std::uint64_t>(n));
    const std::string tag = "a=" + std::to_string(a) + " r=" + std::to_string(r) + ": ";
    PipelineOptions opt;
    opt.verify = false;
    const PipelineResult res = implicitize(inst, opt);
    const std::multiset<int> want{a - static_cast<int>(r / 2), a - static_cast<int>((r + 1) / 2)};
    o.check(res.mu && std::multiset<int>{res.mu->mu1, res.mu->mu2} == want, tag + "mu degrees");
    o.check(res.mu && res.mu->mu1 + res.mu->mu2 == 2 * a - static_cast<int>(r), tag + "mu sum");
    o.check(res.cn.d1.cols() == static_cast<std::size_t>(2 * a) + r, tag + "dim Z1");
    o.check(res.cn.d2.cols() == r, tag + "dim Z2");
    o.check(r == 0 || product_is_zero(res.cn.d1, res.cn.d2), tag + "d1*d2");
    o.check(res.result.det_poly.degree() == 2 * a - static_cast<int>(r), tag + "degree");
    o.check(substitute_surface(res.result.det_poly, res.U.f).is_zero(), tag + "substitution");
    ++done;
  }
  o.check(done == 25, "instances");
}

void c5(Outcome& o) {
  {
    const auto t0 = Clock::now();
    const PipelineResult res = implicitize(load("shape_a8.json"));
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    o.check(res.cn.d1.rows() == 16 && res.cn.d1.cols() == 18, "a=8 d1 shape");
    o.check(res.result.H.degree() == 14, "a=8 degree " + std::to_string(res.result.H.degree()));
    o.check(res.result.H.num_terms() == 115, "a=8 terms " + std::to_string(res.result.H.num_terms()) + " != 115");
    o.check(s < 120, "a=8 time " + std::to_string(s) + " s");
  }
  {
    const auto t0 = Clock::now();
    PipelineOptions opt;
    opt.verify_samples = 5;
    const PipelineResult res = implicitize(load("shape_a20.json"), opt);
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    o.check(res.cn.d1.rows() == 40 && res.cn.d1.cols() == 40, "a=20 d1 shape");
    o.check(res.result.H.degree() == 40, "a=20 degree");
    o.check(res.verification && res.verification->pass(), "a=20 verification");
    o.check(s < 900, "a=20 time " + std::to_string(s) + " s");
  }
}

void c6(Outcome& o) {
  const SurfForm quadric = SurfForm::parse("X*W - Y*Z");
  for (int k = 1; k <= 3; ++k) {
    const PointSet X = random_generic_points(static_cast<std::size_t>(2 * k), 60 + static_cast<std::uint64_t>(k));
    const MGenerators g = m_generators(X);
    const BiForm s = BiForm::parse("s"), t = BiForm::parse("t");
    Instance inst;
    inst.points = X;
    inst.a = k + 1;
    inst.U = std::array<std::string, 4>{(s * g.g1).to_string(), (t * g.g1).to_string(), (s * g.g2).to_string(),
                                        (t * g.g2).to_string()};
    // U must be the whole graded piece
    o.check(ideal_piece(X, {k + 1, 1}).dim() == 4, "k=" + std::to_string(k) + " piece dimension");
    const PipelineResult res = implicitize(inst);
    o.check(res.result.H.proportional_to(quadric), "k=" + std::to_string(k) + " H = " + res.result.H.to_string());
  }
}

void c7(Outcome& o) {
  for (int a = 1; a <= 5; ++a) {
    const Instance inst = make_random_instance(a, 0, 70 + static_cast<std::uint64_t>(a));
    const std::string tag = "a=" + std::to_string(a) + ": ";
    const PipelineResult res = implicitize(inst);
    o.check(res.mu && res.mu->mu1 == a && res.mu->mu2 == a, tag + "syzygy degrees");
    o.check(res.cn.d1.rows() == static_cast<std::size_t>(2 * a) && res.cn.d1.cols() == res.cn.d1.rows(),
            tag + "square d1");
    o.check(res.verification && res.verification->pass(), tag + "verification");
  }
}

// a <= 3, r <= 4
const std::pair<int, std::size_t> kTiny[] = {{1, 0}, {2, 0}, {2, 2}, {3, 2}, {3, 4}};

void c8(Outcome& o) {
  std::uint64_t seed = 80;
  for (const auto& [a, r] : kTiny) {
    const Instance inst = make_random_instance(a, r, seed++);
    const std::string tag = "a=" + std::to_string(a) + " r=" + std::to_string(r) + ": ";
    const PipelineResult res = implicitize(inst);
    try {
      const EliminationResult e = eliminate_params(res.U.f, 200000);
      o.check(e.H.proportional_to(res.result.H), tag + "disagree");
    } catch (const StepCapExceeded&) {
      o.check(false, tag + "elimination step cap");
    }
  }
}

void c9(Outcome& o) {
  std::ostringstream times;
  BenchOptions d1;
  d1.d1_only = true;
  for (const char* f : {"shape_a8.json", "shape_a20.json"}) {
    const BenchReport rep = bench(load(f), d1);
    const double t1 = rep.find("alg1")->d1_ms, t2 = rep.find("alg2")->d1_ms;
    times << "a=" << rep.a << " d1 " << t1 << "/" << t2 << " ms; ";
    o.check(1.2 * t1 < t2, "a=" + std::to_string(rep.a) + " alg1 not faster");
  }
  BenchOptions full;
  full.methods = {"alg1", "alg2", "elimination"};
  full.step_cap = 200000;
  std::uint64_t seed = 80;
  for (const auto& [a, r] : kTiny) {
    const BenchReport rep = bench(make_random_instance(a, r, seed++), full);
    const auto *m1 = rep.find("alg1"), *m2 = rep.find("alg2"), *me = rep.find("elimination");
    const std::string tag = "a=" + std::to_string(a) + " r=" + std::to_string(r);
    times << tag << " " << m1->total_ms << "/" << m2->total_ms << "/" << me->total_ms << " ms; ";
    o.check(me->status == "ok", tag + " elimination " + me->status);
    o.check(rep.agree, tag + " methods disagree");
    o.check(1.2 * m1->total_ms < me->total_ms, tag + " alg1 not faster than elimination");
    o.check(1.2 * m2->total_ms < me->total_ms, tag + " alg2 not faster than elimination");
  }
  o.detail << (o.detail.tellp() > 0 ? "; " : "") << times.str();
}

void c10(Outcome& o) {
  const PipelineResult res = implicitize(load("two_points_a3.json"));
  Rng rng(1010);
  int on = 0, off = 0;
  while (on < 50) {
    const Rational s = rng.uniform(-60, 60), t = rng.uniform(-60, 60), u = rng.uniform(-60, 60),
                   v = rng.uniform(-60, 60);
    const auto q = parameterize(res.U, s, t, u, v);
    if (std::all_of(q.begin(), q.end(), [](const Rational& x) { return x == 0; })) continue;
    o.check(res.result.H.evaluate(q) == 0, "image point off H");
    o.check(membership_rank_test(res.cn, q) == Membership::on_surface, "image point tests off_surface");
    ++on;
  }
  while (off < 50) {
    const std::array<Rational, 4> q{rng.uniform(-99, 99), rng.uniform(-99, 99), rng.uniform(-99, 99),
                                    rng.uniform(-99, 99)};
    if (res.result.H.evaluate(q) == 0) continue;
    o.check(membership_rank_test(res.cn, q) == Membership::off_surface, "point with H != 0 tests on_surface");
    ++off;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only.insert(std::stoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--only N]...\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> all{
      {1, "Hilbert tables", 1, c1},
      {2, "generators of (I_X)_(2,1)", 1, c2},
      {3, "reference degree-4 equation", 10, c3},
      {4, "property suite, 25 instances", 300, c4},
      {5, "a=8/r=2 and a=20/r=0 shapes", 1020, c5},
      {6, "full ideal piece gives XW-YZ", 10, c6},
      {7, "basepoint-free, a=1..5", 120, c7},
      {8, "elimination agrees, 5 instances", 600, c8},
      {9, "timing order (guard 1.2x)", 0, c9},
      {10, "membership, 50 + 50 points", 30, c10},
  };
  bool ok = true;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limit_s > 0) o.check(s < c.limit_s, "over time limit");
    char timing[64];
    if (c.limit_s > 0)
      std::snprintf(timing, sizeof timing, "%.2f s < %.0f s", s, c.limit_s);
    else
      std::snprintf(timing, sizeof timing, "%.2f s", s);
    std::printf("criterion %d: %s  %s [%s]%s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, timing,
                o.detail.tellp() > 0 ? "  " : "", o.detail.str().c_str());
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
