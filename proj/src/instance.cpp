#include "tpsimp/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tpsimp {

using json = nlohmann::ordered_json;

namespace {

Rational coordinate(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(std::to_string(j.get<std::uint64_t>()))
                                                           : Rational(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("point coordinate must be an integer or a rational string, got " + j.dump());
}

json coordinate_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

PointSet points_from(const json& arr) {
  if (!arr.is_array()) throw InputError("\"points\" must be an array");
  std::vector<PointP1P1> pts;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_array() || p[0].size() != 2 || !p[1].is_array() ||
        p[1].size() != 2)
      throw InputError("each point must have the shape [[A0,A1],[B0,B1]], got " + p.dump());
    try {
      pts.push_back(PointP1P1::make(coordinate(p[0][0]), coordinate(p[0][1]), coordinate(p[1][0]), coordinate(p[1][1])));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(std::string("bad point ") + p.dump() + ": " + e.what());
    }
  }
  try {
    return PointSet(std::move(pts));
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

json points_json(const PointSet& X) {
  json arr = json::array();
  for (const auto& p : X.points())
    arr.push_back(json::array({json::array({coordinate_json(p.first[0]), coordinate_json(p.first[1])}),
                               json::array({coordinate_json(p.second[0]), coordinate_json(p.second[1])})}));
  return arr;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

PointSet parse_points_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("points")) throw InputError("expected an object with a \"points\" array");
  return points_from(j["points"]);
}

Instance parse_instance_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw InputError("instance file must be a JSON object");
  // "flags" is accepted for forward compatibility and ignored; CLI flags win.
  static const char* kKnown[] = {"points", "a", "U", "seed", "method", "flags"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
      throw InputError("unknown instance field \"" + key + "\"");
  }
  Instance inst;
  if (j.contains("points")) inst.points = points_from(j["points"]);
  if (!j.contains("a") || !j["a"].is_number_integer()) throw InputError("instance needs an integer \"a\"");
  inst.a = j["a"].get<int>();
  if (inst.a < 1) throw InputError("\"a\" must be at least 1");
  if (j.contains("U")) {
    const auto& U = j["U"];
    if (!U.is_array() || U.size() != 4) throw InputError("\"U\" must be an array of four polynomial strings");
    std::array<std::string, 4> forms;
    for (int i = 0; i < 4; ++i) {
      if (!U[i].is_string()) throw InputError("\"U\" entries must be strings");
      forms[i] = U[i].get<std::string>();
    }
    inst.U = forms;
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0))
      throw InputError("\"seed\" must be a nonnegative integer");
    inst.seed = j["seed"].get<std::uint64_t>();
  }
  if (inst.U && inst.seed) throw InputError("give exactly one of \"U\" and \"seed\"");
  if (j.contains("method")) {
    if (!j["method"].is_string()) throw InputError("\"method\" must be a string");
    inst.method = j["method"].get<std::string>();
  }
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["points"] = points_json(inst.points);
  j["a"] = inst.a;
  if (inst.U) j["U"] = json::array({(*inst.U)[0], (*inst.U)[1], (*inst.U)[2], (*inst.U)[3]});
  if (inst.seed) j["seed"] = *inst.seed;
  if (inst.method) j["method"] = *inst.method;
  return j.dump(2) + "\n";
}

std::string points_to_json(const PointSet& X) {
  json j;
  j["points"] = points_json(X);
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
}

}  // namespace tpsimp
