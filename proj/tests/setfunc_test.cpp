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
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qlov/setfunc.hpp"

namespace qlov {
namespace {

std::vector<double> entries(std::span<const double> e) { return {e.begin(), e.end()}; }

void ExpectNear(std::span<const double> actual, const std::vector<double>& expected, double tol) {
  ASSERT_EQ(actual.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(actual[i], expected[i], tol) << "entry " << i;
}

const SetFunction kV(2, {0, 0.3, 0.5, 1});

TEST(SetFunction, RejectsWrongSize) {
  EXPECT_THROW(SetFunction(2, {0, 1, 2}), InvalidArgument);
  EXPECT_THROW(SetFunction(0, {0}), InvalidArgument);
  EXPECT_THROW(SetFunction(21, {}), InvalidArgument);
}

TEST(SetFunction, RejectsNonFinite) {
  EXPECT_THROW(SetFunction(1, {0, std::numeric_limits<double>::quiet_NaN()}), InvalidArgument);
  EXPECT_THROW(SetFunction(1, {0, std::numeric_limits<double>::infinity()}), InvalidArgument);
}

TEST(SetFunction, Arithmetic) {
  const SetFunction w(2, {1, 1, 1, 1});
  ExpectNear((kV + w).entries(), {1, 1.3, 1.5, 2}, 1e-15);
  ExpectNear((kV - w).entries(), {-1, -0.7, -0.5, 0}, 1e-15);
  ExpectNear((2.0 * kV).entries(), {0, 0.6, 1, 2}, 1e-15);
  EXPECT_THROW(kV + SetFunction(1, {0, 1}), ArityMismatch);
  EXPECT_THROW(kV.at(4), InvalidArgument);
}

TEST(Mobius, WorkedExample) {
  ExpectNear(mobius_transform(kV).entries(), {0, 0.3, 0.5, 0.2}, 1e-15);
}

TEST(Mobius, UnanimityIsDirac) {
  ExpectNear(mobius_transform(SetFunction(2, {0, 0, 0, 1})).entries(), {0, 0, 0, 1}, 0);
}

TEST(Mobius, ConstantHasNoInteraction) {
  ExpectNear(mobius_transform(SetFunction::constant(3, 0.7)).entries(), {0.7, 0, 0, 0, 0, 0, 0, 0}, 1e-15);
}

TEST(Zeta, WorkedExample) {
  ExpectNear(zeta_transform(MobiusCoefficients(2, {0, 0.3, 0.5, 0.2})).entries(), {0, 0.3, 0.5, 1.0}, 1e-15);
  ExpectNear(zeta_transform(MobiusCoefficients(2, {0, 0, 0, 1})).entries(), {0, 0, 0, 1}, 0);
  ExpectNear(zeta_transform(MobiusCoefficients(2, {0.4, 0, 0, 0})).entries(), {0.4, 0.4, 0.4, 0.4}, 0);
}

TEST(Mobius, BothAlgorithmsMatchOracle) {
  Rng rng(11);
  for (int n = 1; n <= 8; ++n) {
    const oracle::Table raw = oracle::random_table(rng, n, -1, 1);
    const SetFunction v(n, raw);
    const oracle::Table expected = oracle::mobius(raw);
    ExpectNear(mobius_transform(v, TransformAlgorithm::kDefinition).entries(), expected, 1e-12);
    ExpectNear(mobius_transform(v, TransformAlgorithm::kFast).entries(), expected, 1e-12);
    ExpectNear(zeta_transform(MobiusCoefficients(n, expected), TransformAlgorithm::kDefinition).entries(),
               oracle::zeta(expected), 1e-12);
    ExpectNear(zeta_transform(MobiusCoefficients(n, expected), TransformAlgorithm::kFast).entries(),
               oracle::zeta(expected), 1e-12);
  }
}

TEST(Dual, WorkedExamples) {
  ExpectNear(dual(kV).entries(), {0, 0.5, 0.7, 1}, 1e-15);
  ExpectNear(dual(SetFunction(2, {0, 0.5, 0.5, 1})).entries(), {0, 0.5, 0.5, 1}, 0);
}

TEST(Dual, MatchesOracleAndIsInvolutive) {
  Rng rng(5);
  for (int n = 1; n <= 6; ++n) {
    const oracle::Table raw = oracle::random_table(rng, n, -1, 1);
    const SetFunction v(n, raw);
    ExpectNear(dual(v).entries(), oracle::dual(raw), 1e-15);
    ExpectNear(dual(dual(v)).entries(), raw, 1e-15);
  }
}

TEST(Capacity, Recognition) {
  EXPECT_TRUE(is_capacity(kV));
  EXPECT_FALSE(is_capacity(SetFunction(2, {0, 0.3, 0.5, 0.2})));
  EXPECT_FALSE(is_capacity(SetFunction(2, {0.1, 0.3, 0.5, 1})));
  const auto violation = find_capacity_violation(SetFunction(2, {0, 0.3, 0.5, 0.2}), 1e-12);
  ASSERT_TRUE(violation.has_value());
  EXPECT_EQ(violation->smaller, 1U);
  EXPECT_EQ(violation->larger, 3U);
}

TEST(Multilinear, WorkedExamples) {
  const MobiusCoefficients a(2, {0, 0.3, 0.5, 0.2});
  EXPECT_NEAR(multilinear_eval(a, std::vector<double>{1, 0}), 0.3, 1e-15);
  EXPECT_NEAR(multilinear_eval(a, std::vector<double>{0.5, 0.5}), 0.45, 1e-15);
  EXPECT_EQ(multilinear_eval(a, std::vector<double>{0, 0}), 0.0);
  EXPECT_THROW(multilinear_eval(a, std::vector<double>{1}), ArityMismatch);
}

TEST(Multilinear, MatchesOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(5));
    const oracle::Table raw = oracle::random_table(rng, n, -1, 1);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& xi : x) xi = rng.uniform(-1, 1);
    EXPECT_NEAR(multilinear_eval(MobiusCoefficients(n, raw), x), oracle::multilinear(raw, x), 1e-12);
  }
}

TEST(Indicator, Examples) {
  EXPECT_EQ(subset_indicator(0b010, 3), (std::vector<double>{0, 1, 0}));
  EXPECT_EQ(subset_indicator(0, 2), (std::vector<double>{0, 0}));
  EXPECT_EQ(subset_indicator(0b111, 3), (std::vector<double>{1, 1, 1}));
  EXPECT_THROW(subset_indicator(0b1000, 3), InvalidArgument);
  EXPECT_EQ(entries(kV.entries()), (std::vector<double>{0, 0.3, 0.5, 1}));
}

}  // namespace
}  // namespace qlov
