#include "tpsimp/report.hpp"

#include <sstream>

#include <json.hpp>

namespace tpsimp {

using json = nlohmann::ordered_json;

namespace {

json verification_json(const VerifyReport& v) {
  json j;
  j["substitution_zero"] = v.substitution_zero;
  j["substitution_method"] = v.substitution_method;
  j["samples"] = v.samples;
  j["samples_vanish"] = v.samples_vanish;
  j["degree_ok"] = v.degree_ok;
  j["pass"] = v.pass();
  return j;
}

}  // namespace

std::string verification_to_json(const VerifyReport& v) { return verification_json(v).dump(2) + "\n"; }

std::string result_to_json(const PipelineResult& res, const ReportOptions& opt) {
  json j;
  j["H"] = res.result.H.to_string();
  j["degree"] = res.result.H.degree();
  if (res.mu)
    j["mu_degrees"] = json::array({res.mu->mu1, res.mu->mu2});
  else
    j["mu_degrees"] = nullptr;
  j["d1"] = res.cn.d1.to_strings();
  j["d2"] = res.cn.d2.to_strings();
  j["verification"] = res.verification ? verification_json(*res.verification) : json(nullptr);
  j["method"] = opt.method;
  j["a"] = res.U.a;
  j["r"] = res.r;
  if (opt.seed) j["seed"] = *opt.seed;
  j["J"] = res.result.J;
  j["primes_used"] = res.result.primes_used;
  j["bareiss_checked"] = res.result.bareiss_checked;
  j["power_exponent"] = res.result.power_exponent;
  j["power_suspect"] = res.result.power_suspect();
  if (res.U.certificate) j["certificate"] = *res.U.certificate;
  if (opt.timings) j["timings_ms"] = res.timings_ms;
  return j.dump(2) + "\n";
}

std::string result_to_text(const PipelineResult& res, const ReportOptions& opt) {
  std::ostringstream os;
  os << "method: " << opt.method << "\n";
  os << "a = " << res.U.a << ", r = " << res.r << "\n";
  if (res.mu) os << "mu-basis degrees: " << res.mu->mu1 << ", " << res.mu->mu2 << "\n";
  os << "d1: " << res.cn.d1.rows() << " x " << res.cn.d1.cols() << ", d2: " << res.cn.d2.rows() << " x "
     << res.cn.d2.cols() << "\n";
  os << "degree: " << res.result.H.degree() << ", terms: " << res.result.H.num_terms() << "\n";
  if (res.result.power_suspect()) os << "warning: det looks like a power (exponent " << res.result.power_exponent << ")\n";
  if (res.verification) {
    const auto& v = *res.verification;
    os << "verification: " << (v.pass() ? "pass" : "FAIL") << " (substitution " << v.substitution_method << " "
       << (v.substitution_zero ? "zero" : "nonzero") << ", " << v.samples << " samples "
       << (v.samples_vanish ? "vanish" : "do not vanish") << ", degree " << (v.degree_ok ? "ok" : "wrong") << ")\n";
  }
  if (opt.timings)
    for (const auto& [stage, ms] : res.timings_ms) os << "  " << stage << ": " << ms << " ms\n";
  os << "H = " << res.result.H.to_string() << "\n";
  return os.str();
}

}  // namespace tpsimp
