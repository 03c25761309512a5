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

// Lovász extensions of pseudo-Boolean functions. Every evaluator below
// computes the same piecewise-affine function through a different
// representation; they exist side by side so each can check the others.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qlov/errors.hpp"
#include "qlov/numeric.hpp"
#include "qlov/setfunc.hpp"

namespace qlov {

/// The sorting cone of a tuple: a permutation σ with x_σ(0) ≤ … ≤ x_σ(n−1),
/// the nested up-sets {σ(i), …, σ(n−1)} and down-sets {σ(0), …, σ(i−1)},
/// and the number of strictly negative coordinates.
///
/// Indices are 0-based: up_set(0) = [n], up_set(n) = ∅, down_set(0) = ∅,
/// down_set(n) = [n], and up_set(i) is the complement of down_set(i).
class SortedView {
 public:
  /// Ties are broken by ascending coordinate index.
  explicit SortedView(std::span<const double> x) : order_(x.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)]; });
    build(x);
  }

  /// Uses a caller-chosen sorting permutation. Any permutation that sorts x
  /// nondecreasingly is accepted, so evaluators can be probed with arbitrary
  /// tie orders.
  SortedView(std::span<const double> x, std::vector<int> order) : order_(std::move(order)) {
    if (order_.size() != x.size()) throw ArityMismatch(x.size(), order_.size());
    std::vector<bool> seen(x.size(), false);
    for (int i : order_) {
      if (i < 0 || static_cast<std::size_t>(i) >= x.size() || seen[static_cast<std::size_t>(i)]) {
        throw InvalidArgument("order is not a permutation");
      }
      seen[static_cast<std::size_t>(i)] = true;
    }
    for (std::size_t k = 1; k < order_.size(); ++k) {
      if (x[static_cast<std::size_t>(order_[k - 1])] > x[static_cast<std::size_t>(order_[k])]) {
        throw InvalidArgument("order does not sort the tuple");
      }
    }
    build(x);
  }

  int arity() const { return static_cast<int>(order_.size()); }
  std::span<const int> order() const { return order_; }
  int sigma(int i) const { return order_[static_cast<std::size_t>(i)]; }
  Subset up_set(int i) const { return up_[static_cast<std::size_t>(i)]; }
  Subset down_set(int i) const { return down_[static_cast<std::size_t>(i)]; }
  /// p such that x_σ(p−1) < 0 ≤ x_σ(p) (0-based), i.e. the count of negatives.
  int split() const { return split_; }

 private:
  void build(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    up_.assign(static_cast<std::size_t>(n) + 1, 0);
    down_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = n - 1; i >= 0; --i) {
      up_[static_cast<std::size_t>(i)] = up_[static_cast<std::size_t>(i) + 1] | singleton(sigma(i));
    }
    for (int i = 1; i <= n; ++i) {
      down_[static_cast<std::size_t>(i)] = down_[static_cast<std::size_t>(i) - 1] | singleton(sigma(i - 1));
    }
    split_ = static_cast<int>(std::count_if(x.begin(), x.end(), [](double xi) { return xi < 0.0; }));
  }

  std::vector<int> order_;
  std::vector<Subset> up_;
  std::vector<Subset> down_;
  int split_ = 0;
};

inline SortedView sorted_view(std::span<const double> x) { return SortedView(x); }

namespace detail {

template <typename Table>
void require_arity(const Table& table, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(table.arity())) {
    throw ArityMismatch(static_cast<std::size_t>(table.arity()), x.size());
  }
}

}  // namespace detail

/// L(x) = Σ_A a(A) ⋀_{i∈A} x_i, where the empty-set term contributes a(∅).
inline double lovasz_eval_mobius(const MobiusCoefficients& a, std::span<const double> x) {
  detail::require_arity(a, x);
  std::vector<double> minimum(a.size());
  minimum[0] = std::numeric_limits<double>::infinity();
  double sum = a[0];
  for (Subset s = 1; s < a.size(); ++s) {
    const int low = std::countr_zero(s);
    minimum[s] = std::min(minimum[s & (s - 1)], x[static_cast<std::size_t>(low)]);
    sum += a[s] * minimum[s];
  }
  return sum;
}

/// L(x) = v(∅) + Σ_i x_σ(i) (v(A↑(i)) − v(A↑(i+1))), affine on each cone.
/// A run of tied coordinates contributes one telescoped term, so at a vertex
/// 1_A the result is v(∅) + (v(A) − v(∅)), which is exactly v(A) when v(∅) = 0.
inline double lovasz_eval_sorted(const SetFunction& v, std::span<const double> x,
                                 const SortedView& view) {
  detail::require_arity(v, x);
  const int n = v.arity();
  double sum = v[0];
  for (int i = 0; i < n;) {
    const double level = x[static_cast<std::size_t>(view.sigma(i))];
    int j = i + 1;
    while (j < n && x[static_cast<std::size_t>(view.sigma(j))] == level) ++j;
    if (level != 0.0) sum += level * (v[view.up_set(i)] - v[view.up_set(j)]);
    i = j;
  }
  return sum;
}

inline double lovasz_eval_sorted(const SetFunction& v, std::span<const double> x) {
  detail::require_arity(v, x);
  return lovasz_eval_sorted(v, x, SortedView(x));
}

/// L(−1_B) = v(∅) + v([n]∖B) − v([n]).
inline double lovasz_at_negative_vertex(const SetFunction& v, Subset b) {
  const Subset all = v.full();
  return v[0] + v[all & ~b] - v[all];
}

/// L(x) = v(∅) + Σ_i x_σ(i) (L(−1_{A↓(i−1)}) − L(−1_{A↓(i)})).
inline double lovasz_eval_descending(const SetFunction& v, std::span<const double> x) {
  detail::require_arity(v, x);
  const SortedView view(x);
  double sum = v[0];
  for (int i = 0; i < v.arity(); ++i) {
    sum += x[static_cast<std::size_t>(view.sigma(i))] *
           (lovasz_at_negative_vertex(v, view.down_set(i)) -
            lovasz_at_negative_vertex(v, view.down_set(i + 1)));
  }
  return sum;
}

/// L(x) = v(∅) + Σ_{A≠∅} a_{v^d}(A) ⋁_{i∈A} x_i, with a_{v^d} the Möbius
/// transform of the dual.
inline double lovasz_eval_maxform(const SetFunction& v, std::span<const double> x) {
  detail::require_arity(v, x);
  const MobiusCoefficients dual_coeffs = mobius_transform(dual(v));
  std::vector<double> maximum(v.size());
  maximum[0] = -std::numeric_limits<double>::infinity();
  double sum = v[0];
  for (Subset s = 1; s < v.size(); ++s) {
    const int low = std::countr_zero(s);
    maximum[s] = std::max(maximum[s & (s - 1)], x[static_cast<std::size_t>(low)]);
    sum += dual_coeffs[s] * maximum[s];
  }
  return sum;
}

/// L(x) = v(∅) + L(x⁺) − L_{v^d}(x⁻).
inline double lovasz_eval_split(const SetFunction& v, std::span<const double> x) {
  detail::require_arity(v, x);
  const std::vector<double> plus = positive_part(x);
  const std::vector<double> minus = negative_part(x);
  return v[0] + lovasz_eval_sorted(v, plus) - lovasz_eval_sorted(dual(v), minus);
}

/// Discrete Choquet integral: the Lovász extension of a capacity.
/// Throws NotACapacity (with the offending covering pair) otherwise.
inline double choquet_integral(const SetFunction& v, std::span<const double> x, double tol = 1e-12) {
  detail::require_arity(v, x);
  if (auto violation = find_capacity_violation(v, tol)) {
    std::string what;
    if (violation->smaller == 0 && violation->larger == 0) {
      what = "not a capacity: v(empty set) = " + std::to_string(v[0]) + " is not zero";
    } else {
      what = "not a capacity: v(" + std::to_string(violation->smaller) + ") > v(" +
             std::to_string(violation->larger) + ") for covering pair (bitmasks)";
    }
    throw NotACapacity(violation->smaller, violation->larger, what);
  }
  return lovasz_eval_sorted(v, x);
}

/// Symmetric (Šipoš) extension Ľ(x) = v(∅) + L(x⁺) − L(x⁻).
inline double symmetric_lovasz_eval(const SetFunction& v, std::span<const double> x) {
  detail::require_arity(v, x);
  const std::vector<double> plus = positive_part(x);
  const std::vector<double> minus = negative_part(x);
  return v[0] + lovasz_eval_sorted(v, plus) - lovasz_eval_sorted(v, minus);
}

/// Ľ on the cone of x: the negative coordinates weigh down-set increments,
/// the nonnegative ones up-set increments.
inline double symmetric_lovasz_eval_piecewise(const SetFunction& v, std::span<const double> x) {
  detail::require_arity(v, x);
  const SortedView view(x);
  double sum = v[0];
  for (int i = 0; i < view.split(); ++i) {
    sum += x[static_cast<std::size_t>(view.sigma(i))] * (v[view.down_set(i + 1)] - v[view.down_set(i)]);
  }
  for (int i = view.split(); i < v.arity(); ++i) {
    sum += x[static_cast<std::size_t>(view.sigma(i))] * (v[view.up_set(i)] - v[view.up_set(i + 1)]);
  }
  return sum;
}

}  // namespace qlov
