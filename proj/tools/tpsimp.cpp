// tpsimp: implicitization of (a,1) tensor-product surfaces with generic basepoints.
//
// Exit status: 0 success, 1 mathematical degeneracy (tagged with its stage),
// 2 usage errors and malformed input.

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpsimp/baseline_gb.hpp"
#include "tpsimp/bench.hpp"
#include "tpsimp/complex.hpp"
#include "tpsimp/errors.hpp"
#include "tpsimp/instance.hpp"
#include "tpsimp/report.hpp"

using namespace tpsimp;
using json = nlohmann::ordered_json;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

Instance load_instance(const std::string& path) {
  Instance inst = parse_instance_json(read_file(path));
  if (inst.U) {
    for (const auto& s : *inst.U) {
      try {
        BiForm::parse(s, {inst.a, 1});
      } catch (const std::exception& e) {
        throw InputError("U entry \"" + s + "\": " + e.what());
      }
    }
  }
  return inst;
}

void require_u_or_seed(const Instance& inst) {
  if (!inst.U && !inst.seed) throw InputError("instance needs either \"U\" or \"seed\"");
}

std::string partition_text(const Partition& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
  return s + ")";
}

// Pipeline pieces up to U, with stage tags.
struct Prefix {
  MGenerators gens;
  StructuredBasis sb;
  SubspaceU U;
};

Prefix build_prefix(const Instance& inst) {
  Prefix p;
  if (!is_generic(inst.points)) throw PipelineError("genericity", "point set is not generic");
  try {
    p.gens = m_generators(inst.points);
  } catch (const std::exception& e) {
    throw PipelineError("generators", e.what());
  }
  try {
    p.sb = basis_a1(p.gens, inst.a);
  } catch (const std::exception& e) {
    throw PipelineError("basis", e.what());
  }
  try {
    p.U = instance_subspace(inst, p.sb, ChooseOptions{});
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError("subspace", e.what());
  }
  return p;
}

json forms_json(const std::vector<BiForm>& fs) {
  json j = json::array();
  for (const auto& f : fs) j.push_back(f.to_string());
  return j;
}

json coeff_json(const BiForm& f) {
  json j = json::array();
  for (const auto& c : f.coeffs()) j.push_back(to_string(c));
  return j;
}

std::array<Rational, 4> parse_point(const std::string& text) {
  std::array<Rational, 4> q;
  std::stringstream ss(text);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 4) throw InputError("--point needs exactly four coordinates");
    try {
      q[k++] = parse_rational(item);
    } catch (const std::exception& e) {
      throw InputError("--point coordinate \"" + item + "\": " + e.what());
    }
  }
  if (k != 4) throw InputError("--point needs exactly four coordinates");
  return q;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& file, int imax, int jmax, const std::string& format) {
  const PointSet X = parse_points_json(read_file(file));
  const int r = static_cast<int>(X.size());
  if (imax < 0) imax = std::max(r, 1);
  if (jmax < 0) jmax = std::max(r, 1);
  const auto table = hilbert_table(X, imax, jmax);
  const auto [alpha, beta] = partitions(X);
  const bool generic = is_generic(X);
  const StabilizedReport stab = stabilized_hilbert_check(X);
  if (format == "json") {
    json j;
    j["r"] = r;
    j["hilbert"] = table;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["alpha_conjugate"] = conjugate(alpha);
    j["beta_conjugate"] = conjugate(beta);
    j["generic"] = generic;
    j["stabilized_check"] = stab.pass;
    if (!stab.pass) j["stabilized_detail"] = stab.detail;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "r = " << r << "\nHilbert function H(i,j), rows i = 0.." << imax << ", columns j = 0.." << jmax << ":\n";
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) std::cout << (c ? " " : "") << row[c];
    std::cout << "\n";
  }
  std::cout << "alpha = " << partition_text(alpha) << ", alpha* = " << partition_text(conjugate(alpha)) << "\n";
  std::cout << "beta = " << partition_text(beta) << ", beta* = " << partition_text(conjugate(beta)) << "\n";
  std::cout << "stabilized values: " << (stab.pass ? "consistent" : "INCONSISTENT: " + stab.detail) << "\n";
  std::cout << "generic: " << (generic ? "yes" : "no") << "\n";
  return 0;
}

int cmd_ideal_basis(const std::string& file, const std::string& format) {
  Instance inst = load_instance(file);
  if (!is_generic(inst.points)) throw PipelineError("genericity", "point set is not generic");
  const MGenerators g = m_generators(inst.points);
  StructuredBasis sb;
  try {
    sb = basis_a1(g, inst.a);
  } catch (const std::exception& e) {
    throw PipelineError("basis", e.what());
  }
  if (format == "json") {
    json j;
    j["r"] = g.r;
    j["g1"] = g.g1.to_string();
    j["g2"] = g.g2.to_string();
    j["q"] = sb.q();
    j["b"] = forms_json(sb.b);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "g1 = " << g.g1.to_string() << "\ng2 = " << g.g2.to_string() << "\nq = " << sb.q() << "\n";
  for (std::size_t k = 0; k < sb.b.size(); ++k) std::cout << "b" << k + 1 << " = " << sb.b[k].to_string() << "\n";
  return 0;
}

int cmd_mu_basis(const std::string& file, const std::string& format) {
  Instance inst = load_instance(file);
  require_u_or_seed(inst);
  const Prefix p = build_prefix(inst);
  QPMatrix qp;
  try {
    qp = qp_decompose(p.U, p.sb);
  } catch (const std::exception& e) {
    throw PipelineError("qp", e.what());
  }
  const MuBasis mb = mu_basis(qp, inst.a, inst.points.size());
  if (format == "json") {
    json j;
    j["mu_degrees"] = json::array({mb.mu1, mb.mu2});
    for (int w = 1; w <= 2; ++w) {
      const SyzVec& K = w == 1 ? mb.K1 : mb.K2;
      json forms = json::array(), coeffs = json::array();
      for (const auto& c : K) {
        forms.push_back(c.to_string());
        coeffs.push_back(coeff_json(c));
      }
      j[w == 1 ? "K1" : "K2"] = forms;
      j[w == 1 ? "K1_coefficients" : "K2_coefficients"] = coeffs;
    }
    j["free_certified"] = mb.free_certified;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "mu degrees: " << mb.mu1 << ", " << mb.mu2 << "\n";
  for (int w = 1; w <= 2; ++w) {
    const SyzVec& K = w == 1 ? mb.K1 : mb.K2;
    std::cout << "K" << w << " = (" << K[0].to_string() << ", " << K[1].to_string() << ", " << K[2].to_string() << ", "
              << K[3].to_string() << ")\n";
  }
  return 0;
}

struct ImplicitizeArgs {
  std::string file, out, method, format = "json";
  std::size_t step_cap = 20000;
  unsigned threads = 1;
  bool timings = false;
};

int cmd_implicitize(const ImplicitizeArgs& args) {
  Instance inst = load_instance(args.file);
  require_u_or_seed(inst);
  std::string method = !args.method.empty() ? args.method : inst.method.value_or("alg1");
  if (method != "alg1" && method != "alg2" && method != "elimination")
    throw InputError("unknown method \"" + method + "\" (expected alg1, alg2 or elimination)");

  if (method == "elimination") {
    const Prefix p = build_prefix(inst);
    const auto t0 = std::chrono::steady_clock::now();
    EliminationResult er;
    try {
      er = eliminate_params(p.U.f, args.step_cap);
    } catch (const std::exception& e) {
      throw PipelineError("elimination", e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const VerifyReport v = verify_implicit(er.H, p.U, inst.points.size(), 20);
    json j;
    j["H"] = er.H.to_string();
    j["degree"] = er.H.degree();
    j["verification"] = json::parse(verification_to_json(v));
    j["method"] = method;
    j["a"] = inst.a;
    j["r"] = inst.points.size();
    if (inst.seed) j["seed"] = *inst.seed;
    j["basis_size"] = er.basis_size;
    if (args.timings) j["timings_ms"] = {{"elimination", ms}};
    if (args.format == "json")
      emit(j.dump(2) + "\n", args.out);
    else
      emit("method: elimination\ndegree: " + std::to_string(er.H.degree()) + "\nH = " + er.H.to_string() + "\n",
           args.out);
    return v.pass() ? 0 : 1;
  }

  PipelineOptions opt;
  opt.method = method == "alg1" ? D1Method::alg1 : D1Method::alg2;
  opt.det.threads = args.threads;
  opt.det.seed = inst.seed.value_or(1);
  const PipelineResult res = implicitize(inst, opt);
  ReportOptions ro;
  ro.timings = args.timings;
  ro.method = method;
  ro.seed = inst.seed;
  emit(args.format == "json" ? result_to_json(res, ro) : result_to_text(res, ro), args.out);
  return res.verification && res.verification->pass() ? 0 : 1;
}

int cmd_verify(const std::string& file, const std::string& H_text, const std::string& result_file, std::size_t samples,
               const std::string& format) {
  Instance inst = load_instance(file);
  require_u_or_seed(inst);
  std::string text = H_text;
  if (!result_file.empty()) {
    json r;
    try {
      r = json::parse(read_file(result_file));
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed result file: ") + e.what());
    }
    if (!r.contains("H") || !r["H"].is_string()) throw InputError("result file has no \"H\" string");
    text = r["H"].get<std::string>();
  }
  if (text.empty()) throw InputError("give --H or --result");
  SurfForm H;
  try {
    H = SurfForm::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("H: ") + e.what());
  }
  const Prefix p = build_prefix(inst);
  const VerifyReport v = verify_implicit(H, p.U, inst.points.size(), samples);
  if (format == "json")
    std::cout << verification_to_json(v);
  else
    std::cout << "substitution (" << v.substitution_method << "): " << (v.substitution_zero ? "zero" : "NONZERO")
              << "\nsamples: " << v.samples << (v.samples_vanish ? " vanish" : " do NOT vanish")
              << "\ndegree: " << (v.degree_ok ? "ok" : "WRONG") << "\nverdict: " << (v.pass() ? "pass" : "fail")
              << "\n";
  return v.pass() ? 0 : 1;
}

int cmd_membership(const std::string& file, const std::string& point, const std::string& format) {
  const auto q = parse_point(point);
  if (std::all_of(q.begin(), q.end(), [](const Rational& x) { return x == 0; }))
    throw InputError("--point must not be the zero vector");
  Instance inst = load_instance(file);
  require_u_or_seed(inst);
  const Prefix p = build_prefix(inst);
  QPMatrix qp;
  try {
    qp = qp_decompose(p.U, p.sb);
  } catch (const std::exception& e) {
    throw PipelineError("qp", e.what());
  }
  const ComplexNu cn = build_d1(p.U, mu_basis(qp, inst.a, inst.points.size()), inst.points.size());
  const Membership m = membership_rank_test(cn, q);
  const char* verdict = m == Membership::on_surface ? "on_surface" : "off_surface";
  if (format == "json") {
    json j;
    j["point"] = point;
    j["result"] = verdict;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << verdict << "\n";
  }
  return 0;
}

int cmd_random_instance(int a, std::size_t r, std::uint64_t seed, const std::string& out) {
  if (a < 1) throw InputError("--a must be at least 1");
  if (2 * a < static_cast<int>(r)) throw InputError("need a >= ceil(r/2)");
  emit(instance_to_json(make_random_instance(a, r, seed)), out);
  return 0;
}

struct BenchArgs {
  std::string file, methods = "alg1,alg2", format = "text";
  int a = 8;
  std::size_t r = 2;
  std::uint64_t seed = 7;
  bool d1_only = false;
  std::size_t step_cap = 20000;
  unsigned threads = 1;
};

int cmd_bench(const BenchArgs& args) {
  Instance inst = args.file.empty() ? make_random_instance(args.a, args.r, args.seed) : load_instance(args.file);
  if (!args.file.empty()) require_u_or_seed(inst);
  BenchOptions opt;
  opt.methods.clear();
  std::stringstream ss(args.methods);
  std::string m;
  while (std::getline(ss, m, ',')) {
    if (m != "alg1" && m != "alg2" && m != "elimination") throw InputError("unknown bench method \"" + m + "\"");
    opt.methods.push_back(m);
  }
  opt.d1_only = args.d1_only;
  opt.step_cap = args.step_cap;
  opt.threads = args.threads;
  const BenchReport rep = bench(inst, opt);
  if (args.format == "json") {
    std::cout << bench_to_json(rep);
  } else {
    std::cout << "a = " << rep.a << ", r = " << rep.r;
    if (rep.seed) std::cout << ", seed = " << *rep.seed;
    std::cout << "\n";
    for (const auto& t : rep.methods) {
      std::cout << t.method << ": " << t.status;
      if (t.method != "elimination") std::cout << ", d1 " << t.d1_ms << " ms (best of " << t.repeats << ")";
      if (t.total_ms > 0) std::cout << ", total " << t.total_ms << " ms";
      std::cout << "\n";
    }
    std::cout << "methods agree: " << (rep.agree ? "yes" : "NO") << "\nmachine: " << rep.machine << "\n";
  }
  return rep.agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implicitization of (a,1) tensor-product surfaces with generic basepoints"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto add_format = [](CLI::App* sub, std::string& fmt) {
    sub->add_option("--format", fmt, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  std::string file, format = "text";
  int imax = -1, jmax = -1;
  auto* analyze = app.add_subcommand("analyze-points", "Hilbert table, partitions and genericity of a point set");
  analyze->add_option("file", file, "Point-set JSON file")->required();
  analyze->add_option("--imax", imax, "Largest row index (default r)");
  analyze->add_option("--jmax", jmax, "Largest column index (default r)");
  add_format(analyze, format);
  analyze->callback([&] { action = [&] { return cmd_analyze(file, imax, jmax, format); }; });

  auto* ideal = app.add_subcommand("ideal-basis", "Generators g1, g2 and the basis of (I_X)_(a,1)");
  ideal->add_option("file", file, "Instance JSON file")->required();
  add_format(ideal, format);
  ideal->callback([&] { action = [&] { return cmd_ideal_basis(file, format); }; });

  auto* mu = app.add_subcommand("mu-basis", "mu-basis of the syzygy module");
  mu->add_option("file", file, "Instance JSON file")->required();
  add_format(mu, format);
  mu->callback([&] { action = [&] { return cmd_mu_basis(file, format); }; });

  ImplicitizeArgs ia;
  auto* impl = app.add_subcommand("implicitize", "Implicit equation via the approximation complex");
  impl->add_option("file", ia.file, "Instance JSON file")->required();
  impl->add_option("-o,--output", ia.out, "Result file (default stdout)");
  impl->add_option("--method", ia.method, "d1 construction or baseline")
      ->check(CLI::IsMember({"alg1", "alg2", "elimination"}));
  impl->add_option("--step-cap", ia.step_cap, "S-pair reduction cap for elimination");
  impl->add_option("--threads", ia.threads, "Threads for determinant evaluations")->check(CLI::Range(1u, 256u));
  impl->add_flag("--timings", ia.timings, "Include per-stage wall times (not reproducible)");
  add_format(impl, ia.format);
  impl->callback([&] { action = [&] { return cmd_implicitize(ia); }; });

  std::string H_text, result_file;
  std::size_t samples = 20;
  auto* ver = app.add_subcommand("verify", "Check a candidate implicit equation against an instance");
  ver->add_option("file", file, "Instance JSON file")->required();
  auto* hopt = ver->add_option("--H", H_text, "Polynomial in X,Y,Z,W");
  ver->add_option("--result", result_file, "Result file written by implicitize")->excludes(hopt);
  ver->add_option("--samples", samples, "Random parameter points");
  add_format(ver, format);
  ver->callback([&] { action = [&] { return cmd_verify(file, H_text, result_file, samples, format); }; });

  std::string point;
  auto* mem = app.add_subcommand("membership", "Rank test of d1 at a point of P^3");
  mem->add_option("file", file, "Instance JSON file")->required();
  mem->add_option("--point", point, "X,Y,Z,W (integers or rationals)")->required();
  add_format(mem, format);
  mem->callback([&] { action = [&] { return cmd_membership(file, point, format); }; });

  int ra = 2;
  std::size_t rr = 2;
  std::uint64_t rseed = 1;
  std::string rout;
  auto* rnd = app.add_subcommand("random-instance", "Random generic instance file");
  rnd->add_option("--a", ra, "Degree in s,t")->required();
  rnd->add_option("--r", rr, "Number of basepoints")->required();
  rnd->add_option("--seed", rseed, "Seed for points and U");
  rnd->add_option("-o,--output", rout, "Output file (default stdout)");
  rnd->callback([&] { action = [&] { return cmd_random_instance(ra, rr, rseed, rout); }; });

  BenchArgs ba;
  auto* bn = app.add_subcommand("bench", "Time Algorithm 1, Algorithm 2 and elimination");
  bn->add_option("file", ba.file, "Instance JSON file (otherwise random from --a --r --seed)");
  bn->add_option("--a", ba.a, "Degree in s,t");
  bn->add_option("--r", ba.r, "Number of basepoints");
  bn->add_option("--seed", ba.seed, "Seed");
  bn->add_option("--methods", ba.methods, "Comma-separated subset of alg1,alg2,elimination");
  bn->add_flag("--d1-only", ba.d1_only, "Only time d1 construction");
  bn->add_option("--step-cap", ba.step_cap, "S-pair reduction cap for elimination");
  bn->add_option("--threads", ba.threads, "Threads for determinant evaluations")->check(CLI::Range(1u, 256u));
  add_format(bn, ba.format);
  bn->callback([&] { action = [&] { return cmd_bench(ba); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PipelineError& e) {
    std::cerr << "error [stage " << e.stage() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
