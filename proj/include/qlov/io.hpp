// Copyright 2026 The qlov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON file formats. Objects serialize with sorted keys and numbers in
// shortest round-trip form, so identical values give identical bytes.
//
//   set function   {"n": 2, "values": [v(∅), v({1}), v({2}), v({1,2})]}
//   Möbius         {"n": 2, "coeffs": [...]}
//   utility        {"breakpoints": [[x, y], ...], "odd": false}
//   function spec  {"type": "quasi_lovasz" | "symmetric_quasi_lovasz" |
//                   "quasi_polynomial" | "tabulated" | "builtin", ...}
//
// Nested set functions and utilities inside a function spec may be given
// inline or as a path string, resolved against the spec file's directory.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlov/axioms.hpp"
#include "qlov/errors.hpp"
#include "qlov/function.hpp"
#include "qlov/quasi.hpp"
#include "qlov/report.hpp"
#include "qlov/setfunc.hpp"
#include "qlov/utility.hpp"

namespace qlov::io {

using Json = nlohmann::json;

inline Json parse_json(const std::string& text, const std::string& origin = "input") {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path.string());
}

/// Pretty-printed with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(number(e, what));
  return out;
}

/// Reads an inline object, or the file a string names.
inline Json resolve(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return read_json_file(base / j.get<std::string>());
  return j;
}

/// Rewraps library errors raised while building a value from JSON.
template <typename Build>
auto parsing(const char* what, Build build) -> decltype(build()) {
  try {
    return build();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

template <typename Table>
Table table_from_json(const Json& j, const char* key) {
  return parsing("set function", [&] {
    const int n = integer(field(j, "n"), "n");
    check_arity(n);
    return Table(n, numbers(field(j, key), key));
  });
}

}  // namespace detail

inline Json to_json(const SetFunction& v) {
  return Json{{"n", v.arity()}, {"values", std::vector<double>(v.entries().begin(), v.entries().end())}};
}

inline Json to_json(const MobiusCoefficients& a) {
  return Json{{"n", a.arity()}, {"coeffs", std::vector<double>(a.entries().begin(), a.entries().end())}};
}

inline SetFunction set_function_from_json(const Json& j) {
  return detail::table_from_json<SetFunction>(j, "values");
}

inline MobiusCoefficients mobius_from_json(const Json& j) {
  return detail::table_from_json<MobiusCoefficients>(j, "coeffs");
}

inline Json to_json(const UtilityFunction& phi) {
  Json points = Json::array();
  for (const Breakpoint& p : phi.breakpoints()) points.push_back(Json::array({p.x, p.y}));
  return Json{{"breakpoints", std::move(points)}, {"odd", phi.is_odd()}};
}

inline UtilityFunction utility_from_json(const Json& j) {
  return detail::parsing("utility function", [&] {
    const Json& raw = detail::field(j, "breakpoints");
    if (!raw.is_array()) throw ParseError("breakpoints must be an array of [x, y] pairs");
    std::vector<Breakpoint> points;
    for (const Json& p : raw) {
      if (!p.is_array() || p.size() != 2) throw ParseError("breakpoints must be an array of [x, y] pairs");
      points.push_back({detail::number(p[0], "breakpoint x"), detail::number(p[1], "breakpoint y")});
    }
    bool odd = false;
    if (auto it = j.find("odd"); it != j.end()) {
      if (!it->is_boolean()) throw ParseError("odd must be a boolean");
      odd = it->get<bool>();
    }
    return UtilityFunction(std::move(points), odd);
  });
}

inline Json to_json(const DomainInterval& d) { return Json::array({d.lo(), d.hi()}); }

inline DomainInterval domain_from_json(const Json& j) {
  return detail::parsing("domain", [&] {
    const std::vector<double> bounds = detail::numbers(j, "domain");
    if (bounds.size() != 2) throw ParseError("domain must be [lo, hi]");
    return DomainInterval(bounds[0], bounds[1]);
  });
}

inline Json to_json(const Tolerance& tol) { return Json{{"abs", tol.abs}, {"rel", tol.rel}}; }

inline Json to_json(const Violation& w) {
  Json j{{"x", w.x}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"gap", w.gap}};
  j["x_prime"] = w.x_prime ? Json(*w.x_prime) : Json(nullptr);
  j["c"] = w.c ? Json(*w.c) : Json(nullptr);
  return j;
}

inline Json to_json(const CheckReport& r) {
  Json violations = Json::array();
  for (const Violation& w : r.violations) violations.push_back(to_json(w));
  return Json{{"property", r.property}, {"passed", r.passed},     {"samples", r.samples},
              {"seed", r.seed},         {"tolerance", to_json(r.tolerance)}, {"grid", r.grid},
              {"normalized", r.normalized}, {"violations", std::move(violations)}};
}

/// 1-based element indices of a subset.
inline Json subset_to_json(Subset s, int n) {
  Json out = Json::array();
  for (int i = 0; i < n; ++i) {
    if (contains(s, i)) out.push_back(i + 1);
  }
  return out;
}

inline Json to_json(const Factorization& f) {
  return Json{{"psi", to_json(f.psi)},
              {"phi", to_json(f.phi)},
              {"witness_set", subset_to_json(f.witness_set, f.psi.arity())},
              {"scale", f.scale},
              {"symmetric", f.symmetric},
              {"domain_kind", to_string(f.kind)},
              {"max_reconstruction_error", f.max_reconstruction_error},
              {"points_checked", f.points_checked}};
}

/// Builds a black-box function from a function spec. `base` resolves
/// nested file references.
inline EvaluableFunction function_from_json(const Json& j, const std::filesystem::path& base = ".") {
  const Json& type_field = detail::field(j, "type");
  if (!type_field.is_string()) throw ParseError("type must be a string");
  const std::string type = type_field.get<std::string>();

  auto utility = [&]() {
    if (j.contains("phi")) return utility_from_json(detail::resolve(j["phi"], base));
    return detail::parsing("identity utility",
                           [&] { return UtilityFunction::identity(domain_from_json(detail::field(j, "domain"))); });
  };

  if (type == "quasi_lovasz" || type == "symmetric_quasi_lovasz") {
    const SetFunction v = set_function_from_json(detail::resolve(detail::field(j, "capacity"), base));
    const UtilityFunction phi = utility();
    if (type == "quasi_lovasz") return make_quasi_lovasz(v, phi);
    return make_symmetric_quasi_lovasz(v, phi);
  }
  if (type == "quasi_polynomial") {
    const SetFunction c = set_function_from_json(detail::resolve(detail::field(j, "coefficients"), base));
    return make_quasi_polynomial(c, utility());
  }
  if (type == "tabulated") {
    return detail::parsing("tabulated function", [&] {
      return make_tabulated(detail::integer(detail::field(j, "n"), "n"), domain_from_json(detail::field(j, "domain")),
                            detail::integer(detail::field(j, "points"), "points"),
                            detail::numbers(detail::field(j, "values"), "values"));
    });
  }
  if (type == "builtin") {
    const Json& name_field = detail::field(j, "name");
    if (!name_field.is_string()) throw ParseError("builtin name must be a string");
    const std::string name = name_field.get<std::string>();
    Builtin kind;
    if (name == "product") {
      kind = Builtin::kProduct;
    } else if (name == "min") {
      kind = Builtin::kMin;
    } else if (name == "max") {
      kind = Builtin::kMax;
    } else {
      throw ParseError("unknown builtin \"" + name + "\" (expected product, min or max)");
    }
    return detail::parsing("builtin", [&] {
      return make_builtin(kind, detail::integer(detail::field(j, "n"), "n"),
                          domain_from_json(detail::field(j, "domain")));
    });
  }
  throw ParseError("unknown function type \"" + type + "\"");
}

inline EvaluableFunction read_function_file(const std::filesystem::path& path) {
  return function_from_json(read_json_file(path), path.parent_path().empty() ? "." : path.parent_path());
}

inline SetFunction read_set_function_file(const std::filesystem::path& path) {
  return set_function_from_json(read_json_file(path));
}

inline UtilityFunction read_utility_file(const std::filesystem::path& path) {
  return utility_from_json(read_json_file(path));
}

}  // namespace qlov::io
