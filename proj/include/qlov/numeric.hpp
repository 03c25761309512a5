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
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qlov {

/// Mixed absolute/relative tolerance:
///   |lhs - rhs| <= abs + rel * max(|lhs|, |rhs|).
struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-9;

  double threshold(double lhs, double rhs) const {
    return abs + rel * std::max(std::fabs(lhs), std::fabs(rhs));
  }
  bool within(double lhs, double rhs) const {
    return std::fabs(lhs - rhs) <= threshold(lhs, rhs);
  }

  friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

/// Seeded generator whose streams are identical on every platform.
/// (std::uniform_*_distribution are implementation-defined, so they are
/// avoided.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) {
    double value = lo + (hi - lo) * unit();
    return std::clamp(value, lo, hi);
  }

  /// Uniform on {0, ..., bound - 1}.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

  /// Uniformly random permutation of {0, ..., n - 1} (Fisher-Yates).
  std::vector<int> permutation(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      auto j = static_cast<std::size_t>(below(static_cast<std::uint64_t>(i) + 1));
      std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }
    return order;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<double> positive_part(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  for (double& xi : out) xi = std::max(xi, 0.0);
  return out;
}

/// x⁻ = (−x)⁺, a nonnegative tuple.
inline std::vector<double> negative_part(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(-x[i], 0.0);
  return out;
}

inline std::vector<double> negated(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -x[i];
  return out;
}

inline std::vector<double> meet(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], y[i]);
  return out;
}

inline std::vector<double> join(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], y[i]);
  return out;
}

/// x ∧ c, componentwise.
inline std::vector<double> meet(std::span<const double> x, double c) {
  std::vector<double> out(x.begin(), x.end());
  for (double& xi : out) xi = std::min(xi, c);
  return out;
}

/// x ∨ c, componentwise.
inline std::vector<double> join(std::span<const double> x, double c) {
  std::vector<double> out(x.begin(), x.end());
  for (double& xi : out) xi = std::max(xi, c);
  return out;
}

}  // namespace qlov
