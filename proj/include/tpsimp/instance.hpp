#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "tpsimp/points.hpp"

namespace tpsimp {

/// Instance file contents: points, a, and either explicit forms U or a seed
/// for drawing U at random.
struct Instance {
  PointSet points;  ///< empty means r = 0
  int a = 1;
  std::optional<std::array<std::string, 4>> U;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
};

/// Thrown for malformed files (CLI exit status 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PointSet parse_points_json(const std::string& text);
Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst);
std::string points_to_json(const PointSet& X);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace tpsimp
