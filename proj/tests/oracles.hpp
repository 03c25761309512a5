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

// Reference computations that share no code with the library: plain
// vectors, explicit subset loops, and the level-set integral form of the
// Lovász extension instead of any sorted or Möbius form.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "qlov/numeric.hpp"

namespace oracle {

using Table = std::vector<double>;

inline int arity_of(const Table& v) {
  int n = 0;
  while ((std::size_t{1} << n) < v.size()) ++n;
  return n;
}

inline bool is_subset(std::uint32_t b, std::uint32_t a) { return (b & ~a) == 0; }

/// a(A) = Σ_{B⊆A} (−1)^{|A|−|B|} v(B), looping over all B.
inline Table mobius(const Table& v) {
  Table a(v.size(), 0.0);
  for (std::uint32_t s = 0; s < v.size(); ++s) {
    for (std::uint32_t b = 0; b < v.size(); ++b) {
      if (!is_subset(b, s)) continue;
      const int parity = __builtin_popcount(s) - __builtin_popcount(b);
      a[s] += (parity % 2 == 0 ? 1.0 : -1.0) * v[b];
    }
  }
  return a;
}

inline Table zeta(const Table& a) {
  Table v(a.size(), 0.0);
  for (std::uint32_t s = 0; s < a.size(); ++s) {
    for (std::uint32_t b = 0; b < a.size(); ++b) {
      if (is_subset(b, s)) v[s] += a[b];
    }
  }
  return v;
}

inline Table dual(const Table& v) {
  const std::uint32_t all = static_cast<std::uint32_t>(v.size() - 1);
  Table d(v.size());
  for (std::uint32_t s = 0; s < v.size(); ++s) d[s] = v[0] + v[all] - v[all & ~s];
  return d;
}

/// L(x) = v(∅) + ∫_0^∞ (v({x ≥ t}) − v(∅)) dt + ∫_{−∞}^0 (v({x ≥ t}) − v([n])) dt,
/// integrated exactly over the step function between consecutive levels.
inline double lovasz(const Table& v, const std::vector<double>& x) {
  const std::uint32_t all = static_cast<std::uint32_t>(v.size() - 1);
  std::vector<double> levels = x;
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  auto level_set = [&](double t) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] >= t) s |= std::uint32_t{1} << i;
    }
    return s;
  };
  double value = v[0];
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const double lo = levels[k];
    const double hi = levels[k + 1];
    const std::uint32_t s = level_set(hi);  // constant on (lo, hi]
    if (lo >= 0.0) {
      value += (hi - lo) * (v[s] - v[0]);
    } else {
      value += (hi - lo) * (v[s] - v[all]);
    }
  }
  return value;
}

inline double symmetric_lovasz(const Table& v, const std::vector<double>& x) {
  std::vector<double> plus(x.size());
  std::vector<double> minus(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    plus[i] = std::max(x[i], 0.0);
    minus[i] = std::max(-x[i], 0.0);
  }
  return v[0] + lovasz(v, plus) - lovasz(v, minus);
}

/// Σ_A a(A) Π_{i∈A} x_i.
inline double multilinear(const Table& a, const std::vector<double>& x) {
  double sum = 0.0;
  for (std::uint32_t s = 0; s < a.size(); ++s) {
    double term = a[s];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((s >> i) & 1U) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

/// c(∅) ∨ max over nonempty A of (c(A) ∧ min_{i∈A} x_i).
inline double lattice_polynomial(const Table& c, const std::vector<double>& x) {
  double value = c[0];
  for (std::uint32_t s = 1; s < c.size(); ++s) {
    double term = c[s];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((s >> i) & 1U) term = std::min(term, x[i]);
    }
    value = std::max(value, term);
  }
  return value;
}

/// Piecewise-linear interpolation by linear scan.
inline double interpolate(const std::vector<std::pair<double, double>>& points, double x) {
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const auto [x0, y0] = points[k];
    const auto [x1, y1] = points[k + 1];
    if (x0 <= x && x <= x1) {
      if (x == x0) return y0;
      if (x == x1) return y1;
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return std::nan("");
}

// ---------------------------------------------------------------------------
// Random instances

inline Table random_table(qlov::Rng& rng, int n, double lo, double hi) {
  Table v(std::size_t{1} << n);
  for (double& e : v) e = rng.uniform(lo, hi);
  return v;
}

/// A capacity: v(∅) = 0, built as a running max over immediate subsets of
/// nonnegative increments.
inline Table random_capacity(qlov::Rng& rng, int n) {
  Table v(std::size_t{1} << n, 0.0);
  for (std::uint32_t s = 1; s < v.size(); ++s) {
    double floor = 0.0;
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1U) floor = std::max(floor, v[s & ~(std::uint32_t{1} << i)]);
    }
    v[s] = floor + rng.uniform(0.0, 1.0);
  }
  return v;
}

/// Nondecreasing breakpoints on [lo, hi] through (0, 0); strictly
/// increasing in x, with `knots` interior points per side.
inline std::vector<std::pair<double, double>> random_monotone(qlov::Rng& rng, double lo, double hi, int knots) {
  std::vector<double> xs{0.0};
  if (hi > 0) {
    xs.push_back(hi);
    for (int k = 0; k < knots; ++k) xs.push_back(rng.uniform(0.0, hi));
  }
  if (lo < 0) {
    xs.push_back(lo);
    for (int k = 0; k < knots; ++k) xs.push_back(rng.uniform(lo, 0.0));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::pair<double, double>> points(xs.size());
  const auto zero = static_cast<std::size_t>(std::find(xs.begin(), xs.end(), 0.0) - xs.begin());
  points[zero] = {0.0, 0.0};
  for (std::size_t k = zero + 1; k < xs.size(); ++k) points[k] = {xs[k], points[k - 1].second + rng.uniform(0.0, 1.0)};
  for (std::size_t k = zero; k-- > 0;) points[k] = {xs[k], points[k + 1].second - rng.uniform(0.0, 1.0)};
  return points;
}

}  // namespace oracle
