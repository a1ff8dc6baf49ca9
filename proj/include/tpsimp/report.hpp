#pragma once

#include <optional>
#include <string>

#include "tpsimp/complex.hpp"

namespace tpsimp {

struct ReportOptions {
  bool timings = false;  ///< timings break byte-for-byte reproducibility
  std::string method = "alg1";
  std::optional<std::uint64_t> seed;
};

/// Result file: H, degree, mu_degrees, d1, d2, verification, then
/// bookkeeping (method, seed, J, primes, checks) and optional timings_ms.
std::string result_to_json(const PipelineResult& res, const ReportOptions& opt);
std::string result_to_text(const PipelineResult& res, const ReportOptions& opt);

std::string verification_to_json(const VerifyReport& v);

}  // namespace tpsimp
