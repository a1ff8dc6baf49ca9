#include "tpsimp/bench.hpp"

#include <chrono>
#include <functional>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "tpsimp/baseline_gb.hpp"
#include "tpsimp/errors.hpp"

namespace tpsimp {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Best-of-n timing of fn; returns (min ms, repeats).
std::pair<double, int> best_of(const std::function<void()>& fn, double min_total_ms, int min_repeats) {
  double best = -1, total = 0;
  int n = 0;
  while (n < min_repeats || total < min_total_ms) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double ms = elapsed_ms(t0);
    best = best < 0 ? ms : std::min(best, ms);
    total += ms;
    ++n;
    if (n >= 1000) break;
  }
  return {best, n};
}

std::string machine_note() {
  std::string note = std::to_string(std::thread::hardware_concurrency()) + " hardware threads";
#if defined(__clang__)
  note += ", clang " __clang_version__;
#elif defined(__GNUC__)
  note += ", gcc " __VERSION__;
#endif
  return note;
}

}  // namespace

Instance make_random_instance(int a, std::size_t r, std::uint64_t seed) {
  Instance inst;
  inst.points = random_generic_points(r, seed);
  inst.a = a;
  inst.seed = seed;
  return inst;
}

const MethodTiming* BenchReport::find(const std::string& method) const {
  for (const auto& m : methods)
    if (m.method == method) return &m;
  return nullptr;
}

BenchReport bench(const Instance& inst, const BenchOptions& opt) {
  BenchReport rep;
  rep.a = inst.a;
  rep.r = inst.points.size();
  rep.seed = inst.seed;
  rep.machine = machine_note();

  if (!is_generic(inst.points)) throw PipelineError("genericity", "point set is not generic");
  const MGenerators gens = m_generators(inst.points);
  const StructuredBasis sb = basis_a1(gens, inst.a);
  const SubspaceU U = instance_subspace(inst, sb, ChooseOptions{});
  const std::size_t r = rep.r;
  DetOptions det;
  det.threads = opt.threads;

  for (const auto& method : opt.methods) {
    MethodTiming mt;
    mt.method = method;
    try {
      if (method == "alg1" || method == "alg2") {
        ComplexNu cn;
        std::function<void()> build;
        if (method == "alg1") {
          build = [&] {
            const QPMatrix qp = qp_decompose(U, sb);
            cn = build_d1(U, mu_basis_known_degrees(qp, inst.a, r), r);
          };
        } else {
          build = [&] { cn = build_d1_direct(U, r); };
        }
        std::tie(mt.d1_ms, mt.repeats) = best_of(build, opt.min_total_ms, opt.min_repeats);
        if (!opt.d1_only) {
          mt.total_ms = best_of(
                            [&] {
                              build();
                              compute_d2(cn);
                              mt.H = det_complex(cn, det).H;
                            },
                            opt.min_total_ms, 1)
                            .first;
        }
      } else if (method == "elimination") {
        std::tie(mt.total_ms, mt.repeats) =
            best_of([&] { mt.H = eliminate_params(U.f, opt.step_cap).H; }, opt.min_total_ms, 1);
      } else {
        throw std::invalid_argument("unknown bench method \"" + method + "\"");
      }
    } catch (const StepCapExceeded&) {
      mt.status = "step-cap";
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      mt.status = std::string("error: ") + e.what();
    }
    rep.methods.push_back(std::move(mt));
  }

  const SurfForm* ref = nullptr;
  for (const auto& m : rep.methods) {
    if (!m.H) continue;
    if (!ref)
      ref = &*m.H;
    else if (!m.H->proportional_to(*ref))
      rep.agree = false;
  }
  return rep;
}

std::string bench_to_json(const BenchReport& rep) {
  nlohmann::ordered_json j;
  j["a"] = rep.a;
  j["r"] = rep.r;
  if (rep.seed) j["seed"] = *rep.seed;
  auto& ms = j["methods"] = nlohmann::ordered_json::array();
  for (const auto& m : rep.methods) {
    nlohmann::ordered_json e;
    e["method"] = m.method;
    e["status"] = m.status;
    if (m.method != "elimination") e["d1_ms"] = m.d1_ms;
    e["total_ms"] = m.total_ms;
    e["repeats"] = m.repeats;
    if (m.H) e["H_terms"] = m.H->num_terms();
    ms.push_back(std::move(e));
  }
  j["agree"] = rep.agree;
  j["machine"] = rep.machine;
  return j.dump(2) + "\n";
}

}  // namespace tpsimp
