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

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlov/numeric.hpp"

namespace qlov {

/// One falsified instance of a property: lhs and rhs should have agreed.
struct Violation {
  std::vector<double> x;
  std::optional<std::vector<double>> x_prime;
  std::optional<double> c;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

/// Outcome of a sampling-based property check. A pass is scoped to the
/// samples (and grid density) that were tried; a fail is definitive.
struct CheckReport {
  std::string property;
  bool passed = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Tolerance tolerance;
  int grid = 0;  ///< levels per axis for ray/grid checks, 0 if unused
  bool normalized = false;  ///< checked on f₀ = f − f(0) because f(0) ≠ 0
  std::vector<Violation> violations;
};

namespace detail {

/// Accumulates samples for one property and emits a CheckReport whose
/// violations are listed in sample order.
class ReportBuilder {
 public:
  ReportBuilder(std::string property, Tolerance tol, std::uint64_t seed, int grid = 0) {
    report_.property = std::move(property);
    report_.tolerance = tol;
    report_.seed = seed;
    report_.grid = grid;
  }

  const Tolerance& tolerance() const { return report_.tolerance; }
  void set_normalized(bool normalized) { report_.normalized = normalized; }

  /// Counts one sample; records a violation when lhs and rhs differ.
  bool expect_equal(Violation witness) {
    ++report_.samples;
    if (report_.tolerance.within(witness.lhs, witness.rhs)) return true;
    witness.gap = std::fabs(witness.lhs - witness.rhs);
    report_.violations.push_back(std::move(witness));
    return false;
  }

  /// Counts one sample; records a violation when lhs exceeds rhs.
  bool expect_at_most(Violation witness) {
    ++report_.samples;
    if (witness.lhs <= witness.rhs + report_.tolerance.threshold(witness.lhs, witness.rhs)) return true;
    witness.gap = witness.lhs - witness.rhs;
    report_.violations.push_back(std::move(witness));
    return false;
  }

  /// `recheck` recomputes (lhs, rhs) from a stored witness; witnesses that no
  /// longer exceed the tolerance are dropped.
  template <typename Recheck>
  CheckReport finish(Recheck recheck) && {
    std::vector<Violation> confirmed;
    for (Violation& v : report_.violations) {
      auto [lhs, rhs] = recheck(v);
      if (!report_.tolerance.within(lhs, rhs)) confirmed.push_back(std::move(v));
    }
    report_.violations = std::move(confirmed);
    report_.passed = report_.violations.empty();
    return std::move(report_);
  }

  CheckReport finish() && {
    report_.passed = report_.violations.empty();
    return std::move(report_);
  }

 private:
  CheckReport report_;
};

}  // namespace detail

}  // namespace qlov
