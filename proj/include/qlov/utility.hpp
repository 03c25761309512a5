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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlov/errors.hpp"
#include "qlov/numeric.hpp"

namespace qlov {

enum class DomainKind { kNonnegative, kNonpositive, kCentered, kGeneral };

inline const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::kNonnegative: return "nonnegative";
    case DomainKind::kNonpositive: return "nonpositive";
    case DomainKind::kCentered: return "centered";
    case DomainKind::kGeneral: return "general";
  }
  return "general";
}

/// Closed interval [lo, hi] with lo ≤ 0 ≤ hi and lo < hi. Unbounded
/// intervals are modeled by large finite bounds.
class DomainInterval {
 public:
  DomainInterval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= 0.0 && 0.0 <= hi) || !(lo < hi)) {
      throw InvalidArgument("domain must be a finite interval [lo, hi] with lo <= 0 <= hi, lo < hi; got [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  DomainKind kind() const {
    if (lo_ == 0.0) return DomainKind::kNonnegative;
    if (hi_ == 0.0) return DomainKind::kNonpositive;
    if (hi_ == -lo_) return DomainKind::kCentered;
    return DomainKind::kGeneral;
  }

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(std::span<const double> x) const {
    return std::all_of(x.begin(), x.end(), [this](double xi) { return contains(xi); });
  }

  /// [lo/2, hi/2]: sums of two points from here stay inside the domain.
  DomainInterval halved() const { return DomainInterval(lo_ / 2, hi_ / 2); }

  /// {−x : x ∈ I}.
  DomainInterval reflected() const { return DomainInterval(-hi_, -lo_); }

  friend bool operator==(const DomainInterval&, const DomainInterval&) = default;

 private:
  double lo_;
  double hi_;
};

/// Sorted sample levels on a domain. Always contains 0, and ±1 whenever they
/// lie in the domain. On centered domains the levels are mirrored so that
/// x is a level iff −x is.
class Grid {
 public:
  /// `points` equispaced levels from lo to hi (then augmented as above).
  static Grid equispaced(const DomainInterval& domain, int points) {
    if (points < 2) throw InvalidArgument("grid needs at least 2 points");
    std::vector<double> levels;
    if (domain.kind() == DomainKind::kCentered) {
      // Levels of the nonnegative half, mirrored.
      const int half = (points + 1) / 2;
      for (int k = 0; k < half; ++k) {
        const double level = domain.hi() * k / (half - 1);
        levels.push_back(level);
        levels.push_back(-level);
      }
    } else {
      for (int k = 0; k < points; ++k) {
        levels.push_back(domain.lo() + (domain.hi() - domain.lo()) * k / (points - 1));
      }
    }
    return Grid(domain, std::move(levels));
  }

  static Grid from_levels(const DomainInterval& domain, std::vector<double> levels) {
    for (double level : levels) {
      if (!domain.contains(level)) {
        throw DomainViolation("grid level " + std::to_string(level) + " outside domain");
      }
    }
    if (domain.kind() == DomainKind::kCentered) {
      const std::size_t count = levels.size();
      for (std::size_t k = 0; k < count; ++k) levels.push_back(-levels[k]);
    }
    return Grid(domain, std::move(levels));
  }

  const DomainInterval& domain() const { return domain_; }
  std::span<const double> levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }

 private:
  Grid(const DomainInterval& domain, std::vector<double> levels) : domain_(domain) {
    levels.push_back(0.0);
    if (domain.contains(1.0)) levels.push_back(1.0);
    if (domain.contains(-1.0)) levels.push_back(-1.0);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    levels_ = std::move(levels);
  }

  DomainInterval domain_;
  std::vector<double> levels_;
};

struct Breakpoint {
  double x;
  double y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Nondecreasing piecewise-linear map φ with φ(0) = 0, given by breakpoints.
/// Its domain is [first x, last x]. An odd utility additionally has a
/// centered domain and φ(−x) = −φ(x) at every breakpoint.
class UtilityFunction {
 public:
  explicit UtilityFunction(std::vector<Breakpoint> points, bool odd = false)
      : points_(std::move(points)), odd_(odd) {
    if (points_.size() < 2) throw InvalidArgument("utility function needs at least 2 breakpoints");
    bool has_origin = false;
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const Breakpoint& p = points_[k];
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw InvalidArgument("non-finite breakpoint");
      }
      if (k > 0 && !(points_[k - 1].x < p.x)) {
        throw InvalidArgument("breakpoint abscissae must be strictly increasing");
      }
      if (k > 0 && points_[k - 1].y > p.y) {
        throw InvalidArgument("utility function must be nondecreasing (breakpoint " +
                              std::to_string(k) + ")");
      }
      if (p.x == 0.0) {
        has_origin = true;
        if (p.y != 0.0) throw InvalidArgument("utility function must vanish at 0");
      }
    }
    if (!has_origin) throw InvalidArgument("0 must be a breakpoint");
    // Throws when the endpoints do not bracket 0.
    const DomainInterval span(points_.front().x, points_.back().x);
    if (odd_) {
      if (span.kind() != DomainKind::kCentered) {
        throw PhiNotOdd("odd utility function needs a centered domain");
      }
      const Tolerance tol;
      for (const Breakpoint& p : points_) {
        if (!tol.within((*this)(-p.x), -p.y)) {
          throw PhiNotOdd("utility function is not odd at x = " + std::to_string(p.x));
        }
      }
    }
  }

  static UtilityFunction identity(const DomainInterval& domain) {
    std::vector<Breakpoint> points{{domain.lo(), domain.lo()}, {0.0, 0.0}, {domain.hi(), domain.hi()}};
    if (domain.lo() == 0.0) points.erase(points.begin());
    if (domain.hi() == 0.0) points.pop_back();
    return UtilityFunction(std::move(points), domain.kind() == DomainKind::kCentered);
  }

  /// Samples fn on Grid::equispaced(domain, points).
  template <typename Fn>
  static UtilityFunction tabulate(Fn&& fn, const DomainInterval& domain, int points, bool odd = false) {
    const Grid grid = Grid::equispaced(domain, points);
    std::vector<Breakpoint> table;
    table.reserve(grid.size());
    for (double x : grid.levels()) table.push_back({x, x == 0.0 ? 0.0 : static_cast<double>(fn(x))});
    return UtilityFunction(std::move(table), odd);
  }

  DomainInterval domain() const { return DomainInterval(points_.front().x, points_.back().x); }
  bool is_odd() const { return odd_; }
  std::span<const Breakpoint> breakpoints() const { return points_; }

  /// Linear interpolation; exact at breakpoints.
  double operator()(double x) const {
    if (!(points_.front().x <= x && x <= points_.back().x)) {
      throw DomainViolation("utility function evaluated at " + std::to_string(x) +
                            " outside its domain [" + std::to_string(points_.front().x) + ", " +
                            std::to_string(points_.back().x) + "]");
    }
    auto upper = std::lower_bound(points_.begin(), points_.end(), x,
                                  [](const Breakpoint& p, double value) { return p.x < value; });
    if (upper->x == x) return upper->y;
    const Breakpoint& right = *upper;
    const Breakpoint& left = *(upper - 1);
    const double t = (x - left.x) / (right.x - left.x);
    return left.y + t * (right.y - left.y);
  }

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (*this)(x[i]);
    return out;
  }

  /// a·φ for a > 0.
  UtilityFunction scaled(double a) const {
    if (!(a > 0.0)) throw InvalidArgument("scale must be positive");
    std::vector<Breakpoint> points = points_;
    for (Breakpoint& p : points) p.y *= a;
    return UtilityFunction(std::move(points), odd_);
  }

  friend bool operator==(const UtilityFunction&, const UtilityFunction&) = default;

 private:
  std::vector<Breakpoint> points_;
  bool odd_;
};

}  // namespace qlov
