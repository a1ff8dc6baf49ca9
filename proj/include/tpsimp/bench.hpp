#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpsimp/complex.hpp"
#include "tpsimp/instance.hpp"

namespace tpsimp {

/// r random generic points, a, and a seed for U.
Instance make_random_instance(int a, std::size_t r, std::uint64_t seed);

struct MethodTiming {
  std::string method;        ///< "alg1", "alg2" or "elimination"
  std::string status = "ok"; ///< "ok", "step-cap", "skipped" or "error: ..."
  double d1_ms = 0;          ///< best of the repeats; 0 for elimination
  double total_ms = 0;       ///< full implicitization (best of repeats); 0 with d1_only
  int repeats = 0;
  std::optional<SurfForm> H;
};

struct BenchReport {
  int a = 0;
  std::size_t r = 0;
  std::optional<std::uint64_t> seed;
  std::vector<MethodTiming> methods;
  bool agree = true;  ///< all methods that produced H agree up to scalar
  std::string machine;

  const MethodTiming* find(const std::string& method) const;
};

struct BenchOptions {
  std::vector<std::string> methods{"alg1", "alg2"};
  bool d1_only = false;
  std::size_t step_cap = 20000;
  /// Repeat each d1 measurement until this much time has accumulated
  /// (at least min_repeats times) and report the minimum. End-to-end
  /// totals use the same budget but may stop after one run.
  double min_total_ms = 300;
  int min_repeats = 3;
  unsigned threads = 1;
};

/// Times d1 construction for Algorithm 1 (QP decomposition, the two
/// known-degree syzygies, bump-up) and Algorithm 2 (one null space), and
/// optionally the full pipeline and the elimination baseline. The shared
/// preprocessing (generators, basis, U) is not timed.
BenchReport bench(const Instance& inst, const BenchOptions& opt = {});

std::string bench_to_json(const BenchReport& rep);

}  // namespace tpsimp
