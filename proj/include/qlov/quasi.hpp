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

// Quasi-Lovász extensions f = L∘φ, their symmetric variants f = Ľ∘φ, the
// homogeneity relaxations that characterize them, canonical factorization,
// and lattice-polynomial (Sugeno-type) aggregation.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlov/errors.hpp"
#include "qlov/function.hpp"
#include "qlov/lovasz.hpp"
#include "qlov/numeric.hpp"
#include "qlov/report.hpp"
#include "qlov/setfunc.hpp"
#include "qlov/utility.hpp"

namespace qlov {

// ---------------------------------------------------------------------------
// Composition

/// L_v(φ(x_1), …, φ(x_n)).
inline double quasi_lovasz_eval(const SetFunction& v, const UtilityFunction& phi, std::span<const double> x) {
  detail::require_arity(v, x);
  return lovasz_eval_sorted(v, phi.apply(x));
}

/// Ľ_v(φ(x_1), …, φ(x_n)); φ must be odd.
inline double symmetric_quasi_lovasz_eval(const SetFunction& v, const UtilityFunction& phi,
                                          std::span<const double> x) {
  if (!phi.is_odd()) throw PhiNotOdd("symmetric quasi-Lovász extension needs an odd utility function");
  detail::require_arity(v, x);
  return symmetric_lovasz_eval(v, phi.apply(x));
}

/// Lattice polynomial in disjunctive normal form,
///   p(x) = c(∅) ∨ ⋁_{A≠∅} (c(A) ∧ ⋀_{i∈A} x_i),
/// so c(∅) acts as a floor.
inline double lattice_polynomial_eval(const SetFunction& c, std::span<const double> x) {
  detail::require_arity(c, x);
  std::vector<double> minimum(c.size());
  minimum[0] = std::numeric_limits<double>::infinity();
  double value = c[0];
  for (Subset s = 1; s < c.size(); ++s) {
    const int low = std::countr_zero(s);
    minimum[s] = std::min(minimum[s & (s - 1)], x[static_cast<std::size_t>(low)]);
    value = std::max(value, std::min(c[s], minimum[s]));
  }
  return value;
}

/// p(φ(x_1), …, φ(x_n)).
inline double quasi_polynomial_eval(const SetFunction& c, const UtilityFunction& phi, std::span<const double> x) {
  detail::require_arity(c, x);
  return lattice_polynomial_eval(c, phi.apply(x));
}

inline EvaluableFunction make_quasi_lovasz(const SetFunction& v, const UtilityFunction& phi) {
  return EvaluableFunction(
      v.arity(), phi.domain(), [v, phi](std::span<const double> x) { return quasi_lovasz_eval(v, phi, x); },
      "quasi_lovasz");
}

/// L_v restricted to domainⁿ.
inline EvaluableFunction make_lovasz(const SetFunction& v, const DomainInterval& domain) {
  return EvaluableFunction(
      v.arity(), domain, [v](std::span<const double> x) { return lovasz_eval_sorted(v, x); }, "lovasz");
}

inline EvaluableFunction make_symmetric_quasi_lovasz(const SetFunction& v, const UtilityFunction& phi) {
  if (!phi.is_odd()) throw PhiNotOdd("symmetric quasi-Lovász extension needs an odd utility function");
  return EvaluableFunction(
      v.arity(), phi.domain(),
      [v, phi](std::span<const double> x) { return symmetric_quasi_lovasz_eval(v, phi, x); },
      "symmetric_quasi_lovasz");
}

inline EvaluableFunction make_quasi_polynomial(const SetFunction& c, const UtilityFunction& phi) {
  return EvaluableFunction(
      c.arity(), phi.domain(), [c, phi](std::span<const double> x) { return quasi_polynomial_eval(c, phi, x); },
      "quasi_polynomial");
}

// ---------------------------------------------------------------------------
// Homogeneity

/// A homogeneity check together with the inner function it exhibits.
struct HomogeneityResult {
  CheckReport report;
  std::optional<UtilityFunction> witness;
  std::optional<Subset> witness_set;
};

namespace detail {

/// Subsets by increasing cardinality, then bitmask order.
inline std::vector<Subset> subsets_by_cardinality(int n) {
  std::vector<Subset> order;
  order.reserve(std::size_t{1} << n);
  for (int k = 0; k <= n; ++k) {
    for (Subset a = 0; a <= full_set(n); ++a) {
      if (cardinality(a) == k) order.push_back(a);
    }
  }
  return order;
}

/// First A (by cardinality, then bitmask) with |f₀(sign·1_A)| > tol.
inline std::optional<Subset> find_witness_subset(const EvaluableFunction& f, double sign, double tol) {
  const double origin = f.at_origin();
  for (Subset a : subsets_by_cardinality(f.arity())) {
    if (std::fabs(f(scaled_indicator(sign, a, f.arity())) - origin) > tol) return a;
  }
  return std::nullopt;
}

/// Shared machinery of weak and odd homogeneity: with reference vertices
/// sign·1_A, checks f₀(x·1_A) = sign·φ(x)·f₀(sign·1_A) on the grid, where
/// φ(x) = sign·f₀(x·1_{A*}) / f₀(sign·1_{A*}).
inline HomogeneityResult check_homogeneity(const EvaluableFunction& f, const Grid& grid, const Tolerance& tol,
                                           double sign, bool odd, std::string property) {
  const int n = f.arity();
  const double origin = f.at_origin();
  auto f0 = [&](std::span<const double> x) { return f(x) - origin; };
  std::vector<double> reference(std::size_t{1} << n);
  for (Subset a = 0; a < reference.size(); ++a) reference[a] = f0(scaled_indicator(sign, a, n));

  detail::ReportBuilder builder(std::move(property), tol, 0, static_cast<int>(grid.size()));
  const std::optional<Subset> witness_set = find_witness_subset(f, sign, tol.abs);
  const std::span<const double> levels = grid.levels();

  auto phi_at = [&](double x) {
    if (!witness_set) return 0.0;
    return sign * f0(scaled_indicator(x, *witness_set, n)) / reference[*witness_set];
  };
  std::vector<double> phi(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) phi[k] = phi_at(levels[k]);

  for (Subset a = 1; a < reference.size(); ++a) {
    for (std::size_t k = 0; k < levels.size(); ++k) {
      Violation w;
      w.x = scaled_indicator(levels[k], a, n);
      w.x_prime = scaled_indicator(sign, a, n);
      w.c = levels[k];
      w.lhs = f0(w.x);
      w.rhs = sign * phi[k] * reference[a];
      builder.expect_equal(std::move(w));
    }
  }
  if (witness_set) {
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
      Violation w;
      w.x = scaled_indicator(levels[k], *witness_set, n);
      w.x_prime = scaled_indicator(levels[k + 1], *witness_set, n);
      w.lhs = phi[k];
      w.rhs = phi[k + 1];
      builder.expect_at_most(std::move(w));
    }
    if (odd) {
      for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] <= 0.0) continue;
        const auto mirror = static_cast<std::size_t>(
            std::lower_bound(levels.begin(), levels.end(), -levels[k]) - levels.begin());
        Violation w;
        w.x = scaled_indicator(-levels[k], *witness_set, n);
        w.x_prime = scaled_indicator(levels[k], *witness_set, n);
        w.lhs = phi[mirror];
        w.rhs = -phi[k];
        builder.expect_equal(std::move(w));
      }
    }
  }

  CheckReport report = std::move(builder).finish([&](const Violation& w) -> std::pair<double, double> {
    // Ray identities are recomputed from the stored tuples; order and
    // oddness witnesses compare sampled values of φ, which are kept as is.
    if (!w.c) return {w.lhs, w.rhs};
    return {f0(w.x), sign * phi_at(*w.c) * f0(*w.x_prime)};
  });

  HomogeneityResult result{std::move(report), std::nullopt, witness_set};
  if (result.report.passed && witness_set) {
    std::vector<Breakpoint> points(levels.size());
    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < levels.size(); ++k) {
      double y = phi[k];
      if (odd) {
        const auto mirror = static_cast<std::size_t>(
            std::lower_bound(levels.begin(), levels.end(), -levels[k]) - levels.begin());
        y = 0.5 * (phi[k] - phi[mirror]);
      }
      if (levels[k] == 0.0) y = 0.0;
      running = std::max(running, y);
      points[k] = {levels[k], running};
    }
    result.witness = UtilityFunction(std::move(points), odd);
  }
  return result;
}

}  // namespace detail

/// Weak homogeneity of f₀ on a nonnegative domain containing 1 (reference
/// vertices 1_A) or a nonpositive domain containing −1 (reference vertices
/// −1_A, identity f₀(x·1_A) = −φ(x)·f₀(−1_A)). On success the witness is the
/// inner function sampled on the grid.
inline HomogeneityResult check_weak_homogeneity(const EvaluableFunction& f, const Grid& grid,
                                                const Tolerance& tol = {}) {
  const DomainInterval& d = f.domain();
  if (d.kind() == DomainKind::kNonnegative && d.contains(1.0)) {
    return detail::check_homogeneity(f, grid, tol, 1.0, false, "weak-homogeneity");
  }
  if (d.kind() == DomainKind::kNonpositive && d.contains(-1.0)) {
    return detail::check_homogeneity(f, grid, tol, -1.0, false, "weak-homogeneity");
  }
  throw DomainKindUnsupported(std::string("weak homogeneity needs [0,1] ⊆ I ⊆ R+ or [-1,0] ⊆ I ⊆ R-; domain is ") +
                              to_string(d.kind()));
}

inline HomogeneityResult check_weak_homogeneity(const EvaluableFunction& f, int grid_points = 33,
                                                const Tolerance& tol = {}) {
  return check_weak_homogeneity(f, Grid::equispaced(f.domain(), grid_points), tol);
}

/// Odd homogeneity of f₀ on a centered domain containing [−1, 1]: the
/// candidate φ must satisfy the ray identity on the signed grid and be odd
/// and nondecreasing.
inline HomogeneityResult check_odd_homogeneity(const EvaluableFunction& f, const Grid& grid,
                                               const Tolerance& tol = {}) {
  const DomainInterval& d = f.domain();
  if (d.kind() != DomainKind::kCentered || !d.contains(1.0)) {
    throw DomainNotCentered("odd homogeneity needs a centered domain containing [-1, 1]");
  }
  return detail::check_homogeneity(f, grid, tol, 1.0, true, "odd-homogeneity");
}

inline HomogeneityResult check_odd_homogeneity(const EvaluableFunction& f, int grid_points = 33,
                                               const Tolerance& tol = {}) {
  return check_odd_homogeneity(f, Grid::equispaced(f.domain(), grid_points), tol);
}

// ---------------------------------------------------------------------------
// Factorization

struct InnerFunction {
  UtilityFunction phi;
  Subset witness_set;
};

namespace detail {

struct Orientation {
  double sign;     ///< reference vertices are sign·1_A
  bool symmetric;  ///< reconstruct with Ľ instead of L
};

inline Orientation orientation_for(const DomainInterval& d) {
  switch (d.kind()) {
    case DomainKind::kNonnegative:
      if (d.contains(1.0)) return {1.0, false};
      break;
    case DomainKind::kNonpositive:
      if (d.contains(-1.0)) return {-1.0, false};
      break;
    case DomainKind::kCentered:
      if (d.contains(1.0)) return {1.0, true};
      break;
    case DomainKind::kGeneral:
      break;
  }
  throw DomainKindUnsupported(
      "factorization needs [0,1] ⊆ I ⊆ R+, [-1,0] ⊆ I ⊆ R-, or a centered I ⊇ [-1,1]; domain is " +
      std::string(to_string(d.kind())));
}

}  // namespace detail

/// The canonical inner function φ_f(x) = f₀(x·1_{A*}) / f₀(1_{A*}), sampled on
/// the grid, normalized to φ_f(1) = 1 (φ_f(−1) = −1 on nonpositive domains,
/// where the ratio uses −1_{A*}). A* is the first subset, by cardinality then
/// bitmask, whose vertex value of f₀ exceeds tol.abs in magnitude.
///
/// Throws NoWitnessSubset when no such subset exists, and
/// ReconstructionMismatch when the sampled ratio decreases (or, on centered
/// domains, is not odd) beyond tolerance.
inline InnerFunction recover_inner_function(const EvaluableFunction& f, const Grid& grid,
                                            const Tolerance& tol = {}) {
  const detail::Orientation orient = detail::orientation_for(f.domain());
  const int n = f.arity();
  const std::optional<Subset> witness = detail::find_witness_subset(f, orient.sign, tol.abs);
  if (!witness) {
    throw NoWitnessSubset("f0 vanishes at every vertex tuple; no normalizing subset exists");
  }
  const double origin = f.at_origin();
  const double reference = f(scaled_indicator(orient.sign, *witness, n)) - origin;
  const std::span<const double> levels = grid.levels();
  std::vector<double> phi(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    phi[k] = levels[k] == 0.0
                 ? 0.0
                 : orient.sign * (f(scaled_indicator(levels[k], *witness, n)) - origin) / reference;
  }
  if (orient.symmetric) {
    for (std::size_t k = 0; k < levels.size(); ++k) {
      if (levels[k] <= 0.0) continue;
      const auto mirror = static_cast<std::size_t>(
          std::lower_bound(levels.begin(), levels.end(), -levels[k]) - levels.begin());
      if (!tol.within(phi[mirror], -phi[k])) {
        throw ReconstructionMismatch("recovered inner function is not odd", scaled_indicator(levels[k], *witness, n),
                                     -phi[k], phi[mirror]);
      }
      const double odd_part = 0.5 * (phi[k] - phi[mirror]);
      phi[k] = odd_part;
      phi[mirror] = -odd_part;
    }
  }
  std::vector<Breakpoint> points(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    double y = phi[k];
    if (k > 0 && y < points[k - 1].y) {
      if (points[k - 1].y - y > tol.threshold(points[k - 1].y, y)) {
        throw ReconstructionMismatch("recovered inner function decreases", scaled_indicator(levels[k], *witness, n),
                                     points[k - 1].y, y);
      }
      y = points[k - 1].y;
    }
    points[k] = {levels[k], y};
  }
  return {UtilityFunction(std::move(points), orient.symmetric), *witness};
}

inline InnerFunction recover_inner_function(const EvaluableFunction& f, int grid_points = 33,
                                            const Tolerance& tol = {}) {
  return recover_inner_function(f, Grid::equispaced(f.domain(), grid_points), tol);
}

/// f = L_psi ∘ phi (or Ľ_psi ∘ phi when symmetric).
struct Factorization {
  SetFunction psi;
  UtilityFunction phi;
  Subset witness_set = 0;
  double scale = 1.0;
  bool symmetric = false;
  DomainKind kind = DomainKind::kNonnegative;
  double max_reconstruction_error = 0.0;
  std::size_t points_checked = 0;

  double operator()(std::span<const double> x) const {
    return symmetric ? symmetric_quasi_lovasz_eval(psi, phi, x) : quasi_lovasz_eval(psi, phi, x);
  }
};

/// Which tuples a reconstruction is verified on.
struct ReconstructionSpec {
  std::size_t box_samples = 200;     ///< random grid tuples when the full grid is too large
  std::uint64_t seed = 0;
  std::size_t full_grid_limit = 10000;  ///< enumerate every grid tuple up to this many
};

namespace detail {

/// Tuples on which a factorization is verified: every ray x·1_A with x a
/// grid level, then either the full grid product or seeded random grid
/// tuples.
inline std::vector<std::vector<double>> reconstruction_points(int n, const Grid& grid,
                                                              const ReconstructionSpec& spec) {
  std::vector<std::vector<double>> points;
  const std::span<const double> levels = grid.levels();
  for (Subset a = 1; a <= full_set(n); ++a) {
    for (double x : levels) points.push_back(scaled_indicator(x, a, n));
  }
  double total = 1.0;
  for (int i = 0; i < n; ++i) total *= static_cast<double>(levels.size());
  if (total <= static_cast<double>(spec.full_grid_limit)) {
    std::vector<std::size_t> index(static_cast<std::size_t>(n), 0);
    while (true) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = levels[index[i]];
      points.push_back(std::move(x));
      std::size_t i = 0;
      while (i < index.size() && ++index[i] == levels.size()) index[i++] = 0;
      if (i == index.size()) break;
    }
  } else {
    Rng rng(spec.seed);
    for (std::size_t s = 0; s < spec.box_samples; ++s) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (double& xi : x) xi = levels[rng.below(levels.size())];
      points.push_back(std::move(x));
    }
  }
  return points;
}

}  // namespace detail

/// ψ := f at the reference vertices, φ := recover_inner_function(f), then
/// verifies f = L_ψ∘φ (Ľ_ψ∘φ on centered domains) on the grid. On
/// nonpositive domains ψ is the set function whose Lovász extension takes
/// the values f(−1_B) at −1_B, i.e. ψ(C) = f(0) + f(−1_{[n]∖C}) − f(−1).
///
/// Comonotonic modularity of f is the caller's precondition; a violation
/// surfaces here as ReconstructionMismatch with the worst point.
inline Factorization canonical_factorization(const EvaluableFunction& f, const Grid& grid,
                                             const Tolerance& tol = {},
                                             const ReconstructionSpec& spec = {}) {
  const detail::Orientation orient = detail::orientation_for(f.domain());
  InnerFunction inner = recover_inner_function(f, grid, tol);
  const int n = f.arity();

  std::optional<SetFunction> psi;
  if (orient.sign > 0) {
    psi = f.vertex_values();
  } else {
    const Subset all = full_set(n);
    const double origin = f.at_origin();
    const double bottom = f(scaled_indicator(-1.0, all, n));
    std::vector<double> values(std::size_t{1} << n);
    for (Subset c = 0; c <= all; ++c) values[c] = origin + f(scaled_indicator(-1.0, all & ~c, n)) - bottom;
    values[0] = origin;
    psi = SetFunction(n, std::move(values));
  }

  Factorization result{std::move(*psi), std::move(inner.phi), inner.witness_set, 1.0, orient.symmetric,
                       f.domain().kind(), 0.0, 0};
  double worst_gap = -1.0;
  std::vector<double> worst_point;
  double worst_expected = 0.0;
  double worst_actual = 0.0;
  bool mismatch = false;
  for (const std::vector<double>& x : detail::reconstruction_points(n, grid, spec)) {
    const double expected = f(x);
    const double actual = result(x);
    const double gap = std::fabs(expected - actual);
    ++result.points_checked;
    result.max_reconstruction_error = std::max(result.max_reconstruction_error, gap);
    if (!tol.within(expected, actual)) mismatch = true;
    if (gap > worst_gap) {
      worst_gap = gap;
      worst_point = x;
      worst_expected = expected;
      worst_actual = actual;
    }
  }
  if (mismatch) {
    throw ReconstructionMismatch("f is not reproduced by its canonical factorization (max error " +
                                     std::to_string(worst_gap) + ")",
                                 std::move(worst_point), worst_expected, worst_actual);
  }
  return result;
}

inline Factorization canonical_factorization(const EvaluableFunction& f, int grid_points = 33,
                                             const Tolerance& tol = {},
                                             const ReconstructionSpec& spec = {}) {
  return canonical_factorization(f, Grid::equispaced(f.domain(), grid_points), tol, spec);
}

/// Given another factorization f = L_user∘phi_user of the function behind
/// `canonical`, returns the a > 0 with phi_user = a·φ_f and
/// (L_canonical)₀ = a·(L_user)₀. Throws NotProportional with the first
/// breaking point or subset.
inline double verify_factorization_uniqueness(const SetFunction& user_psi, const UtilityFunction& user_phi,
                                              const Factorization& canonical, const Tolerance& tol = {}) {
  const int n = canonical.psi.arity();
  if (user_psi.arity() != n) {
    throw ArityMismatch(static_cast<std::size_t>(n), static_cast<std::size_t>(user_psi.arity()));
  }
  const double unit = canonical.kind == DomainKind::kNonpositive ? -1.0 : 1.0;
  if (!user_phi.domain().contains(unit)) {
    throw NotProportional("user utility function is undefined at " + std::to_string(unit));
  }
  const double a = user_phi(unit) / canonical.phi(unit);
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw NotProportional("scale factor " + std::to_string(a) + " is not positive");
  }

  std::vector<double> abscissae;
  for (const Breakpoint& p : canonical.phi.breakpoints()) abscissae.push_back(p.x);
  for (const Breakpoint& p : user_phi.breakpoints()) abscissae.push_back(p.x);
  std::sort(abscissae.begin(), abscissae.end());
  abscissae.erase(std::unique(abscissae.begin(), abscissae.end()), abscissae.end());
  const DomainInterval common(std::max(canonical.phi.domain().lo(), user_phi.domain().lo()),
                              std::min(canonical.phi.domain().hi(), user_phi.domain().hi()));
  for (double x : abscissae) {
    if (!common.contains(x)) continue;
    const double lhs = user_phi(x);
    const double rhs = a * canonical.phi(x);
    if (!tol.within(lhs, rhs)) {
      throw NotProportional("utility functions are not proportional at x = " + std::to_string(x) + ": " +
                            std::to_string(lhs) + " vs " + std::to_string(a) + " * " +
                            std::to_string(canonical.phi(x)));
    }
  }

  const std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
  const double canonical_origin = lovasz_eval_sorted(canonical.psi, origin);
  const double user_origin = lovasz_eval_sorted(user_psi, origin);
  for (Subset s = 1; s <= full_set(n); ++s) {
    const std::vector<double> vertex = scaled_indicator(unit, s, n);
    const double lhs = lovasz_eval_sorted(canonical.psi, vertex) - canonical_origin;
    const double rhs = a * (lovasz_eval_sorted(user_psi, vertex) - user_origin);
    if (!tol.within(lhs, rhs)) {
      throw NotProportional("Lovász parts are not proportional at subset " + std::to_string(s) + ": " +
                            std::to_string(lhs) + " vs " + std::to_string(rhs));
    }
  }
  return a;
}

}  // namespace qlov
