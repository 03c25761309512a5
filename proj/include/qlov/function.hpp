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

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlov/errors.hpp"
#include "qlov/setfunc.hpp"
#include "qlov/utility.hpp"

namespace qlov {

/// A black-box function f : Iⁿ → ℝ. The evaluator must be stateless so it can
/// be called concurrently.
class EvaluableFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  EvaluableFunction(int n, DomainInterval domain, Evaluator evaluator, std::string provenance = "")
      : n_(n), domain_(domain), evaluator_(std::move(evaluator)), provenance_(std::move(provenance)) {
    check_arity(n);
    if (!evaluator_) throw InvalidArgument("empty evaluator");
  }

  int arity() const { return n_; }
  const DomainInterval& domain() const { return domain_; }
  const std::string& provenance() const { return provenance_; }

  double operator()(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n_)) throw ArityMismatch(static_cast<std::size_t>(n_), x.size());
    if (!domain_.contains(x)) throw DomainViolation("input tuple outside the domain box of " + provenance_);
    return evaluator_(x);
  }

  double at_origin() const {
    const std::vector<double> origin(static_cast<std::size_t>(n_), 0.0);
    return (*this)(origin);
  }

  /// f₀(x) = f(x) − f(0).
  double normalized(std::span<const double> x) const { return (*this)(x) - at_origin(); }

  /// f restricted to vertex tuples, as a set function.
  SetFunction vertex_values() const {
    std::vector<double> values(std::size_t{1} << n_);
    for (Subset a = 0; a < values.size(); ++a) values[a] = (*this)(subset_indicator(a, n_));
    return SetFunction(n_, std::move(values));
  }

 private:
  int n_;
  DomainInterval domain_;
  Evaluator evaluator_;
  std::string provenance_;
};

/// x ↦ f(−x) on the reflected domain.
inline EvaluableFunction reflect(const EvaluableFunction& f) {
  return EvaluableFunction(
      f.arity(), f.domain().reflected(),
      [f](std::span<const double> x) {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
        return f(y);
      },
      "reflect(" + f.provenance() + ")");
}

/// x ↦ g(x + c·1) on J − c, where J is the domain of g and c ∈ J.
inline EvaluableFunction translate(const EvaluableFunction& g, double c) {
  if (!g.domain().contains(c)) throw DomainViolation("translation offset outside the domain");
  const DomainInterval shifted(g.domain().lo() - c, g.domain().hi() - c);
  return EvaluableFunction(
      g.arity(), shifted,
      [g, c, shifted](std::span<const double> x) {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          y[i] = std::clamp(x[i] + c, g.domain().lo(), g.domain().hi());
        }
        return g(y);
      },
      "translate(" + g.provenance() + ")");
}

enum class Builtin { kProduct, kMin, kMax };

inline EvaluableFunction make_builtin(Builtin kind, int n, DomainInterval domain) {
  switch (kind) {
    case Builtin::kProduct:
      return EvaluableFunction(
          n, domain,
          [](std::span<const double> x) {
            double p = 1.0;
            for (double xi : x) p *= xi;
            return p;
          },
          "product");
    case Builtin::kMin:
      return EvaluableFunction(
          n, domain, [](std::span<const double> x) { return *std::min_element(x.begin(), x.end()); }, "min");
    case Builtin::kMax:
      return EvaluableFunction(
          n, domain, [](std::span<const double> x) { return *std::max_element(x.begin(), x.end()); }, "max");
  }
  throw InvalidArgument("unknown builtin");
}

/// Multilinear interpolation of values on a regular grid of `points` levels
/// per axis spanning the domain. values[k] belongs to the multi-index whose
/// first coordinate varies fastest.
inline EvaluableFunction make_tabulated(int n, DomainInterval domain, int points, std::vector<double> values) {
  check_arity(n);
  if (points < 2) throw InvalidArgument("tabulated function needs at least 2 points per axis");
  std::size_t expected = 1;
  for (int i = 0; i < n; ++i) expected *= static_cast<std::size_t>(points);
  if (values.size() != expected) {
    throw InvalidArgument("tabulated function expects " + std::to_string(expected) + " values");
  }
  auto table = std::make_shared<const std::vector<double>>(std::move(values));
  return EvaluableFunction(
      n, domain,
      [n, domain, points, table](std::span<const double> x) {
        const double step = (domain.hi() - domain.lo()) / (points - 1);
        std::vector<std::size_t> base(static_cast<std::size_t>(n));
        std::vector<double> frac(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < base.size(); ++i) {
          const double pos = (x[i] - domain.lo()) / step;
          auto cell = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(points - 2)));
          base[i] = cell;
          frac[i] = std::clamp(pos - static_cast<double>(cell), 0.0, 1.0);
        }
        double sum = 0.0;
        for (Subset corner = 0; corner <= full_set(n); ++corner) {
          double weight = 1.0;
          std::size_t index = 0;
          std::size_t stride = 1;
          for (std::size_t i = 0; i < base.size(); ++i) {
            const bool up = contains(corner, static_cast<int>(i));
            weight *= up ? frac[i] : 1.0 - frac[i];
            index += (base[i] + (up ? 1 : 0)) * stride;
            stride *= static_cast<std::size_t>(points);
          }
          if (weight != 0.0) sum += weight * (*table)[index];
        }
        return sum;
      },
      "tabulated");
}

}  // namespace qlov
