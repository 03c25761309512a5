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

// Command-line front end. Machine output goes to stdout or --out,
// diagnostics to stderr.
//
// Exit codes:
//   0 success / property holds     1 property violated
//   2 usage or input error          3 value outside a domain
//   4 set function is not a capacity
//   5 no normalizing subset         6 reconstruction mismatch

#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlov/io.hpp"
#include "qlov/qlov.hpp"

namespace qlov::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFailed = 1,
  kUsage = 2,
  kDomain = 3,
  kNotCapacity = 4,
  kNoWitness = 5,
  kMismatch = 6,
};

struct RunConfig {
  std::string command;
  std::string kind;  ///< eval/transform flavor, or the property name for check
  std::string capacity_path;
  std::string phi_path;
  std::string x_text;
  std::string in_path;
  std::string function_path;
  std::string out_path;
  Tolerance tol;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  int grid = 33;
};

inline const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{
      "comonotonic-additivity",     "horizontal-min-additivity",  "comonotonic-modularity",
      "modularity",                 "horizontal-min-differences", "horizontal-max-differences",
      "comonotonic-maxitivity",     "comonotonic-minitivity",     "positive-negative-split",
      "weak-homogeneity",           "odd-homogeneity"};
  return names;
}

namespace detail {

inline std::vector<double> parse_tuple(const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE) throw ParseError("bad number \"" + item + "\" in --x");
    out.push_back(value);
  }
  if (out.empty()) throw ParseError("--x needs at least one number");
  return out;
}

inline std::string format_value(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

inline void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out_path, std::ios::binary);
  if (!file) throw ParseError("cannot write " + config.out_path);
  file << text;
}

inline int cmd_eval(const RunConfig& config, std::ostream& out) {
  const SetFunction v = io::read_set_function_file(config.capacity_path);
  const std::vector<double> x = parse_tuple(config.x_text);
  std::optional<UtilityFunction> phi;
  if (!config.phi_path.empty()) phi = io::read_utility_file(config.phi_path);

  double value = 0.0;
  if (config.kind == "choquet") {
    value = choquet_integral(v, x, config.tol.abs);
  } else if (config.kind == "lovasz") {
    value = lovasz_eval_sorted(v, x);
  } else if (config.kind == "sipos") {
    value = symmetric_lovasz_eval(v, x);
  } else if (config.kind == "quasi") {
    if (!phi) throw ParseError("eval quasi needs --phi");
    value = quasi_lovasz_eval(v, *phi, x);
  } else {
    value = phi ? quasi_polynomial_eval(v, *phi, x) : lattice_polynomial_eval(v, x);
  }
  emit(config, format_value(value) + "\n", out);
  return kOk;
}

inline int cmd_transform(const RunConfig& config, std::ostream& out) {
  const io::Json in = io::read_json_file(config.in_path);
  io::Json result;
  if (config.kind == "mobius") {
    result = io::to_json(mobius_transform(io::set_function_from_json(in)));
  } else if (config.kind == "zeta") {
    result = io::to_json(zeta_transform(io::mobius_from_json(in)));
  } else {
    result = io::to_json(dual(io::set_function_from_json(in)));
  }
  emit(config, io::dump(result), out);
  return kOk;
}

inline int cmd_check(const RunConfig& config, std::ostream& out) {
  const EvaluableFunction f = io::read_function_file(config.function_path);
  const SampleSpec spec{config.samples, config.seed, config.grid};
  const std::string& p = config.kind;
  CheckReport report;
  if (p == "comonotonic-additivity") {
    report = check_comonotonic_additivity(f, spec, config.tol);
  } else if (p == "horizontal-min-additivity") {
    report = check_horizontal_min_additivity(f, spec, config.tol);
  } else if (p == "comonotonic-modularity") {
    report = check_comonotonic_modularity(f, spec, config.tol);
  } else if (p == "modularity") {
    report = check_modularity(f, spec, config.tol);
  } else if (p == "horizontal-min-differences") {
    report = check_invariance_horizontal_min_differences(f, spec, config.tol);
  } else if (p == "horizontal-max-differences") {
    report = check_invariance_horizontal_max_differences(f, spec, config.tol);
  } else if (p == "comonotonic-maxitivity") {
    report = check_comonotonic_maxitivity(f, spec, config.tol);
  } else if (p == "comonotonic-minitivity") {
    report = check_comonotonic_minitivity(f, spec, config.tol);
  } else if (p == "positive-negative-split") {
    report = check_positive_negative_split(f, spec, config.tol);
  } else if (p == "weak-homogeneity") {
    report = check_weak_homogeneity(f, config.grid, config.tol).report;
  } else {
    report = check_odd_homogeneity(f, config.grid, config.tol).report;
  }
  emit(config, io::dump(io::to_json(report)), out);
  return report.passed ? kOk : kPropertyFailed;
}

inline int cmd_factorize(const RunConfig& config, std::ostream& out) {
  const EvaluableFunction f = io::read_function_file(config.function_path);
  ReconstructionSpec spec;
  spec.box_samples = config.samples;
  spec.seed = config.seed;
  const Factorization factorization = canonical_factorization(f, config.grid, config.tol, spec);
  emit(config, io::dump(io::to_json(factorization)), out);
  return kOk;
}

inline int dispatch(const RunConfig& config, std::ostream& out) {
  if (config.command == "eval") return cmd_eval(config, out);
  if (config.command == "transform") return cmd_transform(config, out);
  if (config.command == "check") return cmd_check(config, out);
  return cmd_factorize(config, out);
}

}  // namespace detail

/// Runs one command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Lovász extensions, Choquet integrals and quasi-Lovász extensions"};
  app.name("qlov");
  app.require_subcommand(1);
  app.add_option("--tol-abs", config.tol.abs, "absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-rel", config.tol.rel, "relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "sampling seed");
  app.add_option("--samples", config.samples, "samples per check")->check(CLI::PositiveNumber);
  app.add_option("--grid", config.grid, "grid levels per axis")->check(CLI::Range(2, 100000));
  app.add_option("--out", config.out_path, "write output here instead of stdout");

  CLI::App* eval = app.add_subcommand("eval", "evaluate an extension at a tuple")->fallthrough();
  eval->add_option("kind", config.kind)
      ->required()
      ->check(CLI::IsMember({"choquet", "lovasz", "sipos", "quasi", "sugeno"}));
  eval->add_option("--capacity", config.capacity_path, "set function file")->required();
  eval->add_option("--phi", config.phi_path, "utility function file");
  eval->add_option("--x", config.x_text, "comma-separated tuple")->required();

  CLI::App* transform = app.add_subcommand("transform", "transform a set function file")->fallthrough();
  transform->add_option("kind", config.kind)->required()->check(CLI::IsMember({"mobius", "zeta", "dual"}));
  transform->add_option("--in", config.in_path, "input file")->required();

  CLI::App* check = app.add_subcommand("check", "audit a property by sampling")->fallthrough();
  check->add_option("property", config.kind)->required()->check(CLI::IsMember(property_names()));
  check->add_option("--function", config.function_path, "function spec file")->required();

  CLI::App* factorize = app.add_subcommand("factorize", "recover psi and phi with f = L_psi o phi")->fallthrough();
  factorize->add_option("--function", config.function_path, "function spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (CLI::App* sub : {eval, transform, check, factorize}) {
    if (sub->parsed()) config.command = sub->get_name();
  }

  try {
    return detail::dispatch(config, out);
  } catch (const NotACapacity& e) {
    err << "qlov: " << e.what() << "\n";
    return kNotCapacity;
  } catch (const DomainViolation& e) {
    err << "qlov: " << e.what() << "\n";
    return kDomain;
  } catch (const NoWitnessSubset& e) {
    err << "qlov: " << e.what() << "\n";
    return kNoWitness;
  } catch (const ReconstructionMismatch& e) {
    err << "qlov: " << e.what() << "\n";
    return kMismatch;
  } catch (const Error& e) {
    err << "qlov: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace qlov::cli
