#pragma once

#include <stdexcept>
#include <string>

namespace tpsimp {

/// A mathematical degeneracy detected by one pipeline stage (non-generic
/// input, wrong kernel dimension, inexact division, ...).
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace tpsimp
