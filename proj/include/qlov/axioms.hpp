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

// Sampling-based falsifiers for the functional equations that characterize
// Lovász extensions and their quasi-/symmetric variants, and the per-cone
// unary decomposition of comonotonically modular functions.
//
// Every checker works on f₀ = f − f(0) and evaluates samples in order, so a
// report depends only on (function, samples, tolerance).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
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

struct SampleSpec {
  std::size_t count = 200;
  std::uint64_t seed = 0;
  int grid = 33;
};

/// Two tuples and, for comonotonic draws, a sorting permutation they share
/// (empty for unconstrained pairs).
struct ComonotonicPair {
  std::vector<double> x;
  std::vector<double> x_prime;
  std::vector<int> sigma;
};

struct ThresholdSample {
  std::vector<double> x;
  double c = 0.0;
};

// ---------------------------------------------------------------------------
// Thresholds

/// [x]_c: x_i where x_i > c, else 0.
inline std::vector<double> threshold_upper(std::span<const double> x, double c) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] > c ? x[i] : 0.0;
  return out;
}

/// [x]^c: x_i where x_i < c, else 0.
inline std::vector<double> threshold_lower(std::span<const double> x, double c) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] < c ? x[i] : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Samplers

inline std::vector<double> sample_point(Rng& rng, int n, const DomainInterval& domain) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& xi : x) xi = rng.uniform(domain.lo(), domain.hi());
  return x;
}

inline std::vector<std::vector<double>> sample_points(int n, const DomainInterval& domain, std::size_t count,
                                                      std::uint64_t seed) {
  check_arity(n);
  Rng rng(seed);
  std::vector<std::vector<double>> points;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) points.push_back(sample_point(rng, n, domain));
  return points;
}

/// Draws σ uniformly, then places two independently drawn sorted uniform
/// tuples along σ, so both tuples lie in the cone of σ.
inline std::vector<ComonotonicPair> sample_comonotonic_pairs(int n, const DomainInterval& domain,
                                                             std::size_t count, std::uint64_t seed) {
  check_arity(n);
  Rng rng(seed);
  std::vector<ComonotonicPair> pairs;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    ComonotonicPair pair;
    pair.sigma = rng.permutation(n);
    std::vector<double> u = sample_point(rng, n, domain);
    std::vector<double> w = sample_point(rng, n, domain);
    std::sort(u.begin(), u.end());
    std::sort(w.begin(), w.end());
    pair.x.resize(u.size());
    pair.x_prime.resize(w.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto position = static_cast<std::size_t>(pair.sigma[i]);
      pair.x[position] = u[i];
      pair.x_prime[position] = w[i];
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

/// Independent uniform pairs, comonotonic or not.
inline std::vector<ComonotonicPair> sample_tuple_pairs(int n, const DomainInterval& domain, std::size_t count,
                                                       std::uint64_t seed) {
  check_arity(n);
  Rng rng(seed);
  std::vector<ComonotonicPair> pairs;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    ComonotonicPair pair;
    pair.x = sample_point(rng, n, domain);
    pair.x_prime = sample_point(rng, n, domain);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

namespace detail {

/// Piecewise-affine functions can only break at coordinate levels, so c is
/// drawn from the coordinates of x, the midpoints between consecutive ones,
/// and the domain endpoints. Candidates rejected by `admissible` are skipped.
template <typename Admissible>
std::vector<ThresholdSample> sample_thresholds(int n, const DomainInterval& domain, std::size_t count,
                                               std::uint64_t seed, Admissible admissible) {
  check_arity(n);
  Rng rng(seed);
  std::vector<ThresholdSample> samples;
  samples.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> x = sample_point(rng, n, domain);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> candidates = sorted;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) candidates.push_back(0.5 * (sorted[i] + sorted[i + 1]));
    candidates.push_back(domain.lo());
    candidates.push_back(domain.hi());
    std::erase_if(candidates, [&](double c) { return !admissible(x, c); });
    const double c = candidates[rng.below(candidates.size())];
    samples.push_back({std::move(x), c});
  }
  return samples;
}

}  // namespace detail

inline std::vector<ThresholdSample> sample_threshold_points(int n, const DomainInterval& domain, std::size_t count,
                                                            std::uint64_t seed) {
  return detail::sample_thresholds(n, domain, count, seed, [](const std::vector<double>&, double) { return true; });
}

// ---------------------------------------------------------------------------
// Checkers

namespace detail {

class Normalized {
 public:
  explicit Normalized(const EvaluableFunction& f) : f_(f), origin_(f.at_origin()) {}
  double operator()(std::span<const double> x) const { return f_(x) - origin_; }
  double origin() const { return origin_; }

 private:
  const EvaluableFunction& f_;
  double origin_;
};

inline Violation skeleton(const ComonotonicPair& p) {
  Violation w;
  w.x = p.x;
  w.x_prime = p.x_prime;
  return w;
}

inline Violation skeleton(const ThresholdSample& s) {
  Violation w;
  w.x = s.x;
  w.c = s.c;
  return w;
}

inline Violation skeleton(const std::vector<double>& x) {
  Violation w;
  w.x = x;
  return w;
}

/// Evaluates `sides(f0, witness) -> (lhs, rhs)` on every sample, records
/// disagreements, and re-evaluates them before emitting the report.
template <typename Sample, typename Sides>
CheckReport run_check(std::string property, const EvaluableFunction& f, std::span<const Sample> samples,
                      const Tolerance& tol, std::uint64_t seed, Sides sides) {
  const Normalized f0(f);
  ReportBuilder builder(std::move(property), tol, seed);
  builder.set_normalized(f0.origin() != 0.0);
  for (const Sample& sample : samples) {
    Violation w = skeleton(sample);
    std::tie(w.lhs, w.rhs) = sides(f0, w);
    builder.expect_equal(std::move(w));
  }
  return std::move(builder).finish([&](const Violation& w) { return sides(f0, w); });
}

inline std::vector<double> plus(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

inline std::vector<double> minus(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

inline void require_kind(const EvaluableFunction& f, DomainKind kind, const char* property) {
  if (f.domain().kind() != kind) {
    throw DomainKindUnsupported(std::string(property) + " needs a " + to_string(kind) + " domain, got " +
                                to_string(f.domain().kind()));
  }
}

}  // namespace detail

/// f₀(x + x') = f₀(x) + f₀(x') on comonotonic pairs.
inline CheckReport check_comonotonic_additivity(const EvaluableFunction& f, std::span<const ComonotonicPair> pairs,
                                                const Tolerance& tol = {}, std::uint64_t seed = 0) {
  return detail::run_check("comonotonic-additivity", f, pairs, tol, seed,
                           [](const detail::Normalized& f0, const Violation& w) {
                             return std::pair{f0(detail::plus(w.x, *w.x_prime)), f0(w.x) + f0(*w.x_prime)};
                           });
}

/// Pairs come from the half-box so that x + x' stays in the domain.
inline CheckReport check_comonotonic_additivity(const EvaluableFunction& f, const SampleSpec& spec,
                                                const Tolerance& tol = {}) {
  const auto pairs = sample_comonotonic_pairs(f.arity(), f.domain().halved(), spec.count, spec.seed);
  return check_comonotonic_additivity(f, pairs, tol, spec.seed);
}

/// f₀(x) = f₀(x ∧ c) + f₀(x − (x ∧ c)).
inline CheckReport check_horizontal_min_additivity(const EvaluableFunction& f,
                                                   std::span<const ThresholdSample> samples,
                                                   const Tolerance& tol = {}, std::uint64_t seed = 0) {
  return detail::run_check("horizontal-min-additivity", f, samples, tol, seed,
                           [](const detail::Normalized& f0, const Violation& w) {
                             const std::vector<double> low = meet(w.x, *w.c);
                             return std::pair{f0(w.x), f0(low) + f0(detail::minus(w.x, low))};
                           });
}

/// Thresholds are restricted to c ≥ max(x) − hi so that x − (x ∧ c) stays
/// in the domain.
inline CheckReport check_horizontal_min_additivity(const EvaluableFunction& f, const SampleSpec& spec,
                                                   const Tolerance& tol = {}) {
  const double hi = f.domain().hi();
  const auto samples = detail::sample_thresholds(
      f.arity(), f.domain(), spec.count, spec.seed, [hi](const std::vector<double>& x, double c) {
        return *std::max_element(x.begin(), x.end()) - c <= hi;
      });
  return check_horizontal_min_additivity(f, samples, tol, spec.seed);
}

namespace detail {

inline std::pair<double, double> modular_sides(const Normalized& f0, const Violation& w) {
  return {f0(w.x) + f0(*w.x_prime), f0(meet(w.x, *w.x_prime)) + f0(join(w.x, *w.x_prime))};
}

}  // namespace detail

/// f₀(x) + f₀(x') = f₀(x ∧ x') + f₀(x ∨ x') on comonotonic pairs.
inline CheckReport check_comonotonic_modularity(const EvaluableFunction& f, std::span<const ComonotonicPair> pairs,
                                                const Tolerance& tol = {}, std::uint64_t seed = 0) {
  return detail::run_check("comonotonic-modularity", f, pairs, tol, seed, detail::modular_sides);
}

inline CheckReport check_comonotonic_modularity(const EvaluableFunction& f, const SampleSpec& spec,
                                                const Tolerance& tol = {}) {
  const auto pairs = sample_comonotonic_pairs(f.arity(), f.domain(), spec.count, spec.seed);
  return check_comonotonic_modularity(f, pairs, tol, spec.seed);
}

/// The modular identity on arbitrary pairs.
inline CheckReport check_modularity(const EvaluableFunction& f, std::span<const ComonotonicPair> pairs,
                                    const Tolerance& tol = {}, std::uint64_t seed = 0) {
  return detail::run_check("modularity", f, pairs, tol, seed, detail::modular_sides);
}

inline CheckReport check_modularity(const EvaluableFunction& f, const SampleSpec& spec, const Tolerance& tol = {}) {
  const auto pairs = sample_tuple_pairs(f.arity(), f.domain(), spec.count, spec.seed);
  return check_modularity(f, pairs, tol, spec.seed);
}

/// f₀(x) − f₀(x ∧ c) = f₀([x]_c) − f₀([x]_c ∧ c), on a nonnegative domain.
inline CheckReport check_invariance_horizontal_min_differences(const EvaluableFunction& f,
                                                               std::span<const ThresholdSample> samples,
                                                               const Tolerance& tol = {}, std::uint64_t seed = 0) {
  detail::require_kind(f, DomainKind::kNonnegative, "horizontal min-difference invariance");
  return detail::run_check("horizontal-min-differences", f, samples, tol, seed,
                           [](const detail::Normalized& f0, const Violation& w) {
                             const std::vector<double> upper = threshold_upper(w.x, *w.c);
                             return std::pair{f0(w.x) - f0(meet(w.x, *w.c)), f0(upper) - f0(meet(upper, *w.c))};
                           });
}

inline CheckReport check_invariance_horizontal_min_differences(const EvaluableFunction& f, const SampleSpec& spec,
                                                               const Tolerance& tol = {}) {
  detail::require_kind(f, DomainKind::kNonnegative, "horizontal min-difference invariance");
  const auto samples = sample_threshold_points(f.arity(), f.domain(), spec.count, spec.seed);
  return check_invariance_horizontal_min_differences(f, samples, tol, spec.seed);
}

/// f₀(x) − f₀(x ∨ c) = f₀([x]^c) − f₀([x]^c ∨ c), on a nonpositive domain.
inline CheckReport check_invariance_horizontal_max_differences(const EvaluableFunction& f,
                                                               std::span<const ThresholdSample> samples,
                                                               const Tolerance& tol = {}, std::uint64_t seed = 0) {
  detail::require_kind(f, DomainKind::kNonpositive, "horizontal max-difference invariance");
  return detail::run_check("horizontal-max-differences", f, samples, tol, seed,
                           [](const detail::Normalized& f0, const Violation& w) {
                             const std::vector<double> lower = threshold_lower(w.x, *w.c);
                             return std::pair{f0(w.x) - f0(join(w.x, *w.c)), f0(lower) - f0(join(lower, *w.c))};
                           });
}

inline CheckReport check_invariance_horizontal_max_differences(const EvaluableFunction& f, const SampleSpec& spec,
                                                               const Tolerance& tol = {}) {
  detail::require_kind(f, DomainKind::kNonpositive, "horizontal max-difference invariance");
  const auto samples = sample_threshold_points(f.arity(), f.domain(), spec.count, spec.seed);
  return check_invariance_horizontal_max_differences(f, samples, tol, spec.seed);
}

/// A property checked on a function and on a transformed counterpart whose
/// verdict must coincide.
struct MetamorphicResult {
  CheckReport original;
  CheckReport transformed;
  bool agree = false;
};

/// Max-difference invariance of f, checked directly and as min-difference
/// invariance of x ↦ f(−x) on the reflected samples (−x, −c).
inline MetamorphicResult check_max_differences_by_reflection(const EvaluableFunction& f,
                                                             std::span<const ThresholdSample> samples,
                                                             const Tolerance& tol = {}, std::uint64_t seed = 0) {
  std::vector<ThresholdSample> reflected;
  reflected.reserve(samples.size());
  for (const ThresholdSample& s : samples) reflected.push_back({negated(s.x), -s.c});
  MetamorphicResult result;
  result.original = check_invariance_horizontal_max_differences(f, samples, tol, seed);
  result.transformed = check_invariance_horizontal_min_differences(reflect(f), reflected, tol, seed);
  result.agree = result.original.passed == result.transformed.passed &&
                 result.original.violations.size() == result.transformed.violations.size();
  return result;
}

inline MetamorphicResult check_max_differences_by_reflection(const EvaluableFunction& f, const SampleSpec& spec,
                                                             const Tolerance& tol = {}) {
  detail::require_kind(f, DomainKind::kNonpositive, "horizontal max-difference invariance");
  const auto samples = sample_threshold_points(f.arity(), f.domain(), spec.count, spec.seed);
  return check_max_differences_by_reflection(f, samples, tol, spec.seed);
}

/// f₀(x ∨ x') = f₀(x) ∨ f₀(x') on comonotonic pairs.
inline CheckReport check_comonotonic_maxitivity(const EvaluableFunction& f, std::span<const ComonotonicPair> pairs,
                                                const Tolerance& tol = {}, std::uint64_t seed = 0) {
  return detail::run_check("comonotonic-maxitivity", f, pairs, tol, seed,
                           [](const detail::Normalized& f0, const Violation& w) {
                             return std::pair{f0(join(w.x, *w.x_prime)), std::max(f0(w.x), f0(*w.x_prime))};
                           });
}

inline CheckReport check_comonotonic_maxitivity(const EvaluableFunction& f, const SampleSpec& spec,
                                                const Tolerance& tol = {}) {
  const auto pairs = sample_comonotonic_pairs(f.arity(), f.domain(), spec.count, spec.seed);
  return check_comonotonic_maxitivity(f, pairs, tol, spec.seed);
}

/// f₀(x ∧ x') = f₀(x) ∧ f₀(x') on comonotonic pairs.
inline CheckReport check_comonotonic_minitivity(const EvaluableFunction& f, std::span<const ComonotonicPair> pairs,
                                                const Tolerance& tol = {}, std::uint64_t seed = 0) {
  return detail::run_check("comonotonic-minitivity", f, pairs, tol, seed,
                           [](const detail::Normalized& f0, const Violation& w) {
                             return std::pair{f0(meet(w.x, *w.x_prime)), std::min(f0(w.x), f0(*w.x_prime))};
                           });
}

inline CheckReport check_comonotonic_minitivity(const EvaluableFunction& f, const SampleSpec& spec,
                                                const Tolerance& tol = {}) {
  const auto pairs = sample_comonotonic_pairs(f.arity(), f.domain(), spec.count, spec.seed);
  return check_comonotonic_minitivity(f, pairs, tol, spec.seed);
}

/// f₀(x) = f₀(x⁺) + f₀(−x⁻).
inline CheckReport check_positive_negative_split(const EvaluableFunction& f,
                                                 std::span<const std::vector<double>> points,
                                                 const Tolerance& tol = {}, std::uint64_t seed = 0) {
  return detail::run_check("positive-negative-split", f, points, tol, seed,
                           [](const detail::Normalized& f0, const Violation& w) {
                             return std::pair{f0(w.x), f0(positive_part(w.x)) + f0(negated(negative_part(w.x)))};
                           });
}

inline CheckReport check_positive_negative_split(const EvaluableFunction& f, const SampleSpec& spec,
                                                 const Tolerance& tol = {}) {
  const auto points = sample_points(f.arity(), f.domain(), spec.count, spec.seed);
  return check_positive_negative_split(f, points, tol, spec.seed);
}

/// Comonotonic modularity of g and of x ↦ g(x + c·1); c must lie in the
/// domain of g. Both draws use the same seed.
inline MetamorphicResult check_translation_metamorphic(const EvaluableFunction& g, double c, const SampleSpec& spec,
                                                       const Tolerance& tol = {}) {
  MetamorphicResult result;
  result.original = check_comonotonic_modularity(g, spec, tol);
  result.transformed = check_comonotonic_modularity(translate(g, c), spec, tol);
  result.agree = result.original.passed == result.transformed.passed;
  return result;
}

// ---------------------------------------------------------------------------
// Comonotonic separability

/// Lexicographic rank of a permutation of {0, …, n−1}.
inline std::size_t permutation_rank(std::span<const int> sigma) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < sigma.size(); ++j) smaller += sigma[j] < sigma[i] ? 1 : 0;
    rank = rank * (sigma.size() - i) + smaller;
  }
  return rank;
}

inline std::vector<int> permutation_unrank(std::size_t rank, int n) {
  std::vector<std::size_t> digits(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::size_t>(n - i);
    digits[static_cast<std::size_t>(i)] = rank % base;
    rank /= base;
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<int> sigma;
  sigma.reserve(pool.size());
  for (std::size_t digit : digits) {
    sigma.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return sigma;
}

namespace detail {

struct ConeSets {
  std::vector<Subset> up;    ///< up[i] = {σ(i), …, σ(n−1)}
  std::vector<Subset> down;  ///< down[i] = {σ(0), …, σ(i−1)}
};

inline ConeSets cone_sets(std::span<const int> sigma) {
  const std::size_t n = sigma.size();
  ConeSets sets{std::vector<Subset>(n + 1, 0), std::vector<Subset>(n + 1, 0)};
  for (std::size_t i = n; i-- > 0;) sets.up[i] = sets.up[i + 1] | singleton(sigma[i]);
  for (std::size_t i = 1; i <= n; ++i) sets.down[i] = sets.down[i - 1] | singleton(sigma[i - 1]);
  return sets;
}

/// The two tuples whose f₀-difference is the i-th summand at level t:
/// t·1_{up(i)} and t·1_{up(i+1)} for t ≥ 0, t·1_{down(i+1)} and t·1_{down(i)}
/// for t < 0.
inline std::pair<std::vector<double>, std::vector<double>> summand_tuples(const ConeSets& sets, std::size_t i,
                                                                          double t, int n) {
  if (t >= 0.0) return {scaled_indicator(t, sets.up[i], n), scaled_indicator(t, sets.up[i + 1], n)};
  return {scaled_indicator(t, sets.down[i + 1], n), scaled_indicator(t, sets.down[i], n)};
}

}  // namespace detail

/// Per-cone unary summands: for x in the cone of σ,
///   f(x) = constant + Σ_i table(σ, i)(x_σ(i)).
/// Tables hold the summands at the grid levels and interpolate linearly in
/// between, so reconstruction is exact only at grid levels.
struct SeparableDecomposition {
  int n = 0;
  std::vector<double> levels;
  double constant = 0.0;
  /// tables[rank][i][k]: summand i of the permutation with that lexicographic
  /// rank, at levels[k].
  std::vector<std::vector<std::vector<double>>> tables;
  double max_reconstruction_error = 0.0;
  std::size_t points_checked = 0;

  double summand(std::size_t rank, std::size_t i, double t) const {
    const std::vector<double>& table = tables[rank][i];
    auto upper = std::lower_bound(levels.begin(), levels.end(), t);
    if (upper == levels.end()) throw DomainViolation("summand evaluated above the grid");
    const auto k = static_cast<std::size_t>(upper - levels.begin());
    if (*upper == t) return table[k];
    if (k == 0) throw DomainViolation("summand evaluated below the grid");
    const double s = (t - levels[k - 1]) / (levels[k] - levels[k - 1]);
    return table[k - 1] + s * (table[k] - table[k - 1]);
  }

  /// Evaluates with the given sorting permutation of x.
  double operator()(std::span<const double> x, std::span<const int> sigma) const {
    const std::size_t rank = permutation_rank(sigma);
    double sum = constant;
    for (std::size_t i = 0; i < sigma.size(); ++i) sum += summand(rank, i, x[static_cast<std::size_t>(sigma[i])]);
    return sum;
  }

  double operator()(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n)) throw ArityMismatch(static_cast<std::size_t>(n), x.size());
    const SortedView view(x);
    return (*this)(x, view.order());
  }
};

inline constexpr int kSeparableArityLimit = 8;

/// Builds the unary summands of f from scaled indicator tuples and verifies
/// the reconstruction on grid tuples inside each cone (every nondecreasing
/// level assignment when there are at most `points_per_cone` of them,
/// otherwise that many seeded random ones). Comonotonic modularity of f is a
/// precondition; where it fails, ReconstructionMismatch carries the worst
/// grid tuple.
inline SeparableDecomposition separable_decomposition(const EvaluableFunction& f, const Grid& grid,
                                                      const Tolerance& tol = {},
                                                      std::size_t points_per_cone = 5000,
                                                      std::uint64_t seed = 0) {
  const int n = f.arity();
  if (n > kSeparableArityLimit) {
    throw InvalidArgument("separable decomposition supports n <= " + std::to_string(kSeparableArityLimit));
  }
  const detail::Normalized f0(f);
  SeparableDecomposition result;
  result.n = n;
  result.levels.assign(grid.levels().begin(), grid.levels().end());
  result.constant = f0.origin();

  std::size_t cones = 1;
  for (int k = 2; k <= n; ++k) cones *= static_cast<std::size_t>(k);
  result.tables.resize(cones);
  for (std::size_t rank = 0; rank < cones; ++rank) {
    const std::vector<int> sigma = permutation_unrank(rank, n);
    const detail::ConeSets sets = detail::cone_sets(sigma);
    auto& tables = result.tables[rank];
    tables.assign(static_cast<std::size_t>(n), std::vector<double>(result.levels.size()));
    for (std::size_t i = 0; i < tables.size(); ++i) {
      for (std::size_t k = 0; k < result.levels.size(); ++k) {
        const auto [upper, lower] = detail::summand_tuples(sets, i, result.levels[k], n);
        tables[i][k] = f0(upper) - f0(lower);
      }
    }
  }

  // Nondecreasing level-index sequences, as combinations with repetition.
  const std::size_t g = result.levels.size();
  double combinations = 1.0;
  for (int k = 1; k <= n; ++k) combinations = combinations * static_cast<double>(g + static_cast<std::size_t>(k) - 1) / k;
  const bool enumerate = combinations <= static_cast<double>(points_per_cone);

  Rng rng(seed);
  double worst_gap = -1.0;
  std::vector<double> worst_point;
  double worst_expected = 0.0;
  double worst_actual = 0.0;
  bool mismatch = false;
  auto verify = [&](std::span<const int> sigma, std::span<const std::size_t> index) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < index.size(); ++i) x[static_cast<std::size_t>(sigma[i])] = result.levels[index[i]];
    const double expected = f(x);
    const double actual = result(x, sigma);
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
  };

  for (std::size_t rank = 0; rank < cones; ++rank) {
    const std::vector<int> sigma = permutation_unrank(rank, n);
    std::vector<std::size_t> index(static_cast<std::size_t>(n), 0);
    if (enumerate) {
      while (true) {
        verify(sigma, index);
        // Next nondecreasing sequence in lexicographic order.
        std::size_t i = index.size();
        while (i > 0 && index[i - 1] == g - 1) --i;
        if (i == 0) break;
        const std::size_t bumped = index[i - 1] + 1;
        for (std::size_t j = i - 1; j < index.size(); ++j) index[j] = bumped;
      }
    } else {
      for (std::size_t s = 0; s < points_per_cone; ++s) {
        for (std::size_t& k : index) k = rng.below(g);
        std::sort(index.begin(), index.end());
        verify(sigma, index);
      }
    }
  }
  if (mismatch) {
    throw ReconstructionMismatch("f is not comonotonically separable at grid resolution (max error " +
                                     std::to_string(worst_gap) + ")",
                                 std::move(worst_point), worst_expected, worst_actual);
  }
  return result;
}

inline SeparableDecomposition separable_decomposition(const EvaluableFunction& f, int grid_points = 33,
                                                      const Tolerance& tol = {}) {
  return separable_decomposition(f, Grid::equispaced(f.domain(), grid_points), tol);
}

/// One summand f(upper) − f(lower) of the cone-wise telescoping sum.
struct TelescopingTerm {
  int coordinate = 0;  ///< σ(i), 0-based
  std::vector<double> upper;
  std::vector<double> lower;
  double upper_value = 0.0;
  double lower_value = 0.0;
  double value() const { return upper_value - lower_value; }
};

struct TelescopingExpansion {
  std::vector<int> sigma;
  std::vector<TelescopingTerm> terms;
  double constant = 0.0;  ///< f(0)
  double total() const {
    double sum = constant;
    for (const TelescopingTerm& t : terms) sum += t.value();
    return sum;
  }
};

/// Writes f(x) as f(0) plus one difference per coordinate, walking the cone
/// of x (ties broken by ascending index). For x with x_1 < x_2 = x_3 < x_4
/// the terms are f(x_1,x_1,x_1,x_1) − f(0,x_1,x_1,x_1), then
/// f(0,x_2,x_2,x_2) − f(0,0,x_2,x_2), and so on down to f(0,0,0,x_4) − f(0).
inline TelescopingExpansion telescoping_expansion(const EvaluableFunction& f, std::span<const double> x) {
  const int n = f.arity();
  if (x.size() != static_cast<std::size_t>(n)) throw ArityMismatch(static_cast<std::size_t>(n), x.size());
  const SortedView view(x);
  TelescopingExpansion out;
  out.sigma.assign(view.order().begin(), view.order().end());
  out.constant = f.at_origin();
  const detail::ConeSets sets = detail::cone_sets(out.sigma);
  for (std::size_t i = 0; i < out.sigma.size(); ++i) {
    TelescopingTerm term;
    term.coordinate = out.sigma[i];
    std::tie(term.upper, term.lower) =
        detail::summand_tuples(sets, i, x[static_cast<std::size_t>(out.sigma[i])], n);
    term.upper_value = f(term.upper);
    term.lower_value = f(term.lower);
    out.terms.push_back(std::move(term));
  }
  return out;
}

}  // namespace qlov
