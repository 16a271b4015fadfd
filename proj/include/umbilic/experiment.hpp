// JSON experiment specs for the deformation oracle:
//
//   {
//     "patch": "spacelike_A2.surf",          // path, relative to the JSON file
//     "family": [
//       {"direction": [[1, 1, "1"]], "magnitudes": ["-2/10000", "1/10000"]},
//       {"direction": [[2, 0, "1"]], "magnitudes": ["1/10000"]}
//     ],
//     "radius": "1/8",
//     "tolerance": 1e-30
//   }
//
// "patch" may instead be an object {"spec": "<surface spec text>"}. The
// family is swept over the Cartesian product of the magnitude grids.
#pragma once

#include "umbilic/deformation.hpp"
#include "umbilic/surface_spec.hpp"

#include <json.hpp>

#include <filesystem>

namespace umbilic {

struct ExperimentSpec {
  MongePatch patch;
  std::vector<PerturbationAxis> family;
  Scalar radius = rational(1, 8);
  double tolerance = 1e-30;
};

namespace detail {

inline ParseError json_error(const std::string& text, std::size_t byte, const std::string& what) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return ParseError(line, col, what);
}

inline Scalar json_rational(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(0, 0, where + ": expected a rational string such as \"1/8\"");
  auto s = j.get<std::string>();
  auto q = parse_rational(s);
  if (!q) throw ParseError(0, 0, where + ": bad rational \"" + s + "\"");
  return *q;
}

}  // namespace detail

/// Structural errors are reported as ParseError at line 0; JSON syntax
/// errors carry the line and column of the offending byte.
inline ExperimentSpec parse_experiment(const std::string& text, const std::filesystem::path& base_dir = ".") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw detail::json_error(text, e.byte == 0 ? 0 : e.byte - 1, e.what());
  }
  if (!j.is_object()) throw ParseError(1, 1, "experiment spec must be a JSON object");
  ExperimentSpec ex;
  if (!j.contains("patch")) throw ParseError(0, 0, "missing \"patch\"");
  const auto& patch = j["patch"];
  if (patch.is_string()) {
    ex.patch = load_surface_spec((base_dir / patch.get<std::string>()).string());
  } else if (patch.is_object() && patch.contains("spec") && patch["spec"].is_string()) {
    ex.patch = parse_surface_spec(patch["spec"].get<std::string>());
  } else {
    throw ParseError(0, 0, "\"patch\" must be a path or {\"spec\": text}");
  }
  if (j.contains("family")) {
    if (!j["family"].is_array()) throw ParseError(0, 0, "\"family\" must be an array");
    int index = 0;
    for (const auto& axis : j["family"]) {
      std::string where = "family[" + std::to_string(index++) + "]";
      if (!axis.is_object() || !axis.contains("direction") || !axis.contains("magnitudes"))
        throw ParseError(0, 0, where + ": needs \"direction\" and \"magnitudes\"");
      PerturbationAxis pa;
      for (const auto& t : axis["direction"]) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
          throw ParseError(0, 0, where + ": direction entries are [i, j, \"p/q\"]");
        int i = t[0].get<int>(), jj = t[1].get<int>();
        if (i < 0 || jj < 0 || i + jj == 0) throw ParseError(0, 0, where + ": exponents must be non-negative, not both 0");
        pa.direction.add_term(i, jj, detail::json_rational(t[2], where));
      }
      if (!axis["magnitudes"].is_array() || axis["magnitudes"].empty())
        throw ParseError(0, 0, where + ": \"magnitudes\" must be a non-empty array");
      for (const auto& m : axis["magnitudes"]) pa.magnitudes.push_back(detail::json_rational(m, where));
      ex.family.push_back(std::move(pa));
    }
  }
  if (j.contains("radius")) ex.radius = detail::json_rational(j["radius"], "radius");
  if (ex.radius <= 0) throw ParseError(0, 0, "radius must be positive");
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number()) throw ParseError(0, 0, "tolerance must be a number");
    ex.tolerance = j["tolerance"].get<double>();
  }
  return ex;
}

inline ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str(), std::filesystem::path(path).parent_path());
}

}  // namespace umbilic
