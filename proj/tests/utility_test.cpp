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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qlov/function.hpp"
#include "qlov/utility.hpp"

namespace qlov {
namespace {

using Tuple = std::vector<double>;

TEST(Domain, Kinds) {
  EXPECT_EQ(DomainInterval(0, 1).kind(), DomainKind::kNonnegative);
  EXPECT_EQ(DomainInterval(-2, 0).kind(), DomainKind::kNonpositive);
  EXPECT_EQ(DomainInterval(-1, 1).kind(), DomainKind::kCentered);
  EXPECT_EQ(DomainInterval(-1, 2).kind(), DomainKind::kGeneral);
  EXPECT_THROW(DomainInterval(0.5, 1), InvalidArgument);
  EXPECT_THROW(DomainInterval(0, 0), InvalidArgument);
  EXPECT_THROW(DomainInterval(0, INFINITY), InvalidArgument);
  EXPECT_EQ(DomainInterval(-1, 2).reflected(), DomainInterval(-2, 1));
}

TEST(Grid, ContainsZeroAndUnitAndMirrors) {
  const Grid g = Grid::equispaced(DomainInterval(0, 2), 4);
  const std::vector<double> levels(g.levels().begin(), g.levels().end());
  EXPECT_EQ(levels.front(), 0.0);
  EXPECT_NE(std::find(levels.begin(), levels.end(), 1.0), levels.end());
  EXPECT_TRUE(std::is_sorted(levels.begin(), levels.end()));

  const Grid c = Grid::equispaced(DomainInterval(-1, 1), 9);
  for (double x : c.levels()) {
    EXPECT_NE(std::find(c.levels().begin(), c.levels().end(), -x), c.levels().end()) << x;
  }
  EXPECT_THROW(Grid::from_levels(DomainInterval(0, 1), {2.0}), DomainViolation);
}

TEST(Utility, Validation) {
  EXPECT_THROW(UtilityFunction({{0, 0}}), InvalidArgument);
  EXPECT_THROW(UtilityFunction({{0, 0}, {0, 1}}), InvalidArgument);
  EXPECT_THROW(UtilityFunction({{0, 0}, {1, -1}}), InvalidArgument);
  EXPECT_THROW(UtilityFunction({{0, 0.1}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(UtilityFunction({{0.5, 0}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(UtilityFunction({{-1, -1}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(UtilityFunction({{-1, -2}, {0, 0}, {1, 1}}, true), PhiNotOdd);
  EXPECT_THROW(UtilityFunction({{0, 0}, {1, 1}}, true), PhiNotOdd);
  EXPECT_NO_THROW(UtilityFunction({{-1, -1}, {0, 0}, {1, 1}}, true));
}

TEST(Utility, InterpolationMatchesOracle) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto points = oracle::random_monotone(rng, -2, 3, 5);
    std::vector<Breakpoint> bp;
    for (auto [x, y] : points) bp.push_back({x, y});
    const UtilityFunction phi(bp);
    for (int k = 0; k < 20; ++k) {
      const double x = rng.uniform(-2, 3);
      EXPECT_NEAR(phi(x), oracle::interpolate(points, x), 1e-12);
    }
    for (auto [x, y] : points) EXPECT_EQ(phi(x), y);
    EXPECT_THROW(phi(3.5), DomainViolation);
  }
}

TEST(Utility, IdentityTabulateScale) {
  const UtilityFunction id = UtilityFunction::identity(DomainInterval(-1, 1));
  EXPECT_TRUE(id.is_odd());
  EXPECT_EQ(id(0.3), 0.3);
  const UtilityFunction sq = UtilityFunction::tabulate([](double t) { return t * t; }, DomainInterval(0, 1), 101);
  EXPECT_EQ(sq.breakpoints().size(), 101U);
  EXPECT_NEAR(sq(0.5), 0.25, 1e-15);
  EXPECT_NEAR(sq(0.205), 0.04205, 1e-15);
  EXPECT_NEAR(sq.scaled(2)(0.5), 0.5, 1e-15);
  EXPECT_THROW(sq.scaled(0), InvalidArgument);
}

TEST(Function, DomainAndArityChecks) {
  const EvaluableFunction f = make_builtin(Builtin::kProduct, 2, DomainInterval(0, 1));
  EXPECT_EQ(f(Tuple{0.5, 0.5}), 0.25);
  EXPECT_THROW(f(Tuple{1.5, 0.5}), DomainViolation);
  EXPECT_THROW(f(Tuple{0.5}), ArityMismatch);
  EXPECT_EQ(f.vertex_values().entries()[3], 1.0);
}

TEST(Function, ReflectAndTranslate) {
  const EvaluableFunction g = make_builtin(Builtin::kMax, 2, DomainInterval(0, 1));
  const EvaluableFunction r = reflect(g);
  EXPECT_EQ(r.domain(), DomainInterval(-1, 0));
  EXPECT_EQ(r(Tuple{-0.2, -0.7}), 0.7);
  const EvaluableFunction t = translate(g, 0.3);
  EXPECT_DOUBLE_EQ(t.domain().lo(), -0.3);
  EXPECT_NEAR(t(Tuple{-0.1, 0.2}), 0.5, 1e-15);
  EXPECT_THROW(translate(g, 2), DomainViolation);
}

TEST(Function, TabulatedIsMultilinear) {
  // f(x, y) = x + 2y on a 3×3 grid over [0, 1]².
  std::vector<double> values;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) values.push_back(0.5 * i + 2 * 0.5 * j);
  }
  const EvaluableFunction f = make_tabulated(2, DomainInterval(0, 1), 3, values);
  EXPECT_NEAR(f(Tuple{0.3, 0.8}), 1.9, 1e-12);
  EXPECT_NEAR(f(Tuple{1, 1}), 3, 1e-12);
  EXPECT_THROW(make_tabulated(2, DomainInterval(0, 1), 3, {1, 2}), InvalidArgument);
}

}  // namespace
}  // namespace qlov
