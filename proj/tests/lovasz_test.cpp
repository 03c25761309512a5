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

#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qlov/lovasz.hpp"

namespace qlov {
namespace {

using Tuple = std::vector<double>;

const SetFunction kV(2, {0, 0.3, 0.5, 1});
const MobiusCoefficients kA(2, {0, 0.3, 0.5, 0.2});

TEST(SortedView, Examples) {
  const SortedView a(Tuple{0.7, 0.2});
  EXPECT_EQ(a.sigma(0), 1);
  EXPECT_EQ(a.sigma(1), 0);
  EXPECT_EQ(a.up_set(0), 0b11U);
  EXPECT_EQ(a.up_set(1), 0b01U);
  EXPECT_EQ(a.up_set(2), 0U);
  EXPECT_EQ(a.split(), 0);

  const SortedView b(Tuple{-0.5, 0.7});
  EXPECT_EQ(b.sigma(0), 0);
  EXPECT_EQ(b.split(), 1);

  const SortedView tie(Tuple{0.3, 0.3});
  EXPECT_EQ(tie.sigma(0), 0);
  EXPECT_EQ(tie.sigma(1), 1);
}

TEST(SortedView, NestingAndComplements) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    Tuple x(static_cast<std::size_t>(n));
    for (double& xi : x) xi = rng.below(3) == 0 ? 0.5 : rng.uniform(-1, 1);
    const SortedView view(x);
    for (int i = 0; i < n; ++i) {
      EXPECT_LE(x[static_cast<std::size_t>(view.sigma(i))],
                x[static_cast<std::size_t>(view.sigma(std::min(i + 1, n - 1)))]);
      EXPECT_EQ(view.up_set(i + 1) & ~view.up_set(i), 0U);
      EXPECT_EQ(view.down_set(i) & ~view.down_set(i + 1), 0U);
    }
    for (int i = 0; i <= n; ++i) EXPECT_EQ(view.up_set(i), full_set(n) & ~view.down_set(i));
  }
}

TEST(SortedView, ExplicitOrderIsValidated) {
  EXPECT_NO_THROW(SortedView(Tuple{0.3, 0.3}, {1, 0}));
  EXPECT_THROW(SortedView(Tuple{0.2, 0.3}, {1, 0}), InvalidArgument);
  EXPECT_THROW(SortedView(Tuple{0.2, 0.3}, {0, 0}), InvalidArgument);
  EXPECT_THROW(SortedView(Tuple{0.2, 0.3}, {0}), ArityMismatch);
}

TEST(Lovasz, WorkedExamplesAllForms) {
  const Tuple x{0.2, 0.7};
  const Tuple y{-0.5, 0.7};
  EXPECT_NEAR(lovasz_eval_mobius(kA, x), 0.45, 1e-15);
  EXPECT_NEAR(lovasz_eval_mobius(kA, y), 0.1, 1e-15);
  EXPECT_NEAR(lovasz_eval_sorted(kV, x), 0.45, 1e-15);
  EXPECT_NEAR(lovasz_eval_sorted(kV, y), 0.1, 1e-15);
  EXPECT_NEAR(lovasz_eval_descending(kV, x), 0.45, 1e-15);
  EXPECT_NEAR(lovasz_eval_descending(kV, Tuple{-1, -1}), -1, 1e-15);
  EXPECT_NEAR(lovasz_eval_maxform(kV, x), 0.45, 1e-15);
  EXPECT_NEAR(lovasz_eval_maxform(kV, y), 0.1, 1e-15);
  EXPECT_NEAR(lovasz_eval_split(kV, y), 0.1, 1e-15);
  EXPECT_NEAR(lovasz_eval_split(kV, Tuple{-1, -1}), -1, 1e-15);
  EXPECT_NEAR(lovasz_eval_split(kV, x), lovasz_eval_sorted(kV, x), 1e-15);
}

TEST(Lovasz, DualMobiusOfWorkedExample) {
  const MobiusCoefficients d = mobius_transform(dual(kV));
  EXPECT_NEAR(d[1], 0.5, 1e-15);
  EXPECT_NEAR(d[2], 0.7, 1e-15);
  EXPECT_NEAR(d[3], -0.2, 1e-15);
}

TEST(Lovasz, ConstantTermAtOrigin) {
  const SetFunction shifted(2, {0.25, 0.3, 0.5, 1});
  EXPECT_EQ(lovasz_eval_sorted(shifted, Tuple{0, 0}), 0.25);
  EXPECT_EQ(lovasz_eval_descending(shifted, Tuple{0, 0}), 0.25);
  EXPECT_EQ(lovasz_eval_mobius(mobius_transform(shifted), Tuple{0, 0}), 0.25);
}

TEST(Lovasz, ExtendsTheSetFunction) {
  Rng rng(8);
  for (int n = 1; n <= 5; ++n) {
    const SetFunction v(n, oracle::random_table(rng, n, -1, 1));
    const MobiusCoefficients a = mobius_transform(v);
    for (Subset s = 0; s <= full_set(n); ++s) {
      const Tuple x = subset_indicator(s, n);
      EXPECT_NEAR(lovasz_eval_sorted(v, x), v[s], 1e-12);
      EXPECT_NEAR(lovasz_eval_mobius(a, x), v[s], 1e-12);
      EXPECT_NEAR(lovasz_eval_maxform(v, x), v[s], 1e-12);
      EXPECT_NEAR(lovasz_at_negative_vertex(v, s), lovasz_eval_sorted(v, scaled_indicator(-1, s, n)), 1e-12);
    }
  }
}

TEST(Lovasz, FormsMatchLevelSetOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const oracle::Table raw = oracle::random_table(rng, n, -1, 1);
    const SetFunction v(n, raw);
    const MobiusCoefficients a = mobius_transform(v);
    Tuple x(static_cast<std::size_t>(n));
    for (double& xi : x) xi = rng.below(4) == 0 ? 0.25 : rng.uniform(-1, 1);
    const double expected = oracle::lovasz(raw, x);
    EXPECT_NEAR(lovasz_eval_sorted(v, x), expected, 1e-12);
    EXPECT_NEAR(lovasz_eval_mobius(a, x), expected, 1e-12);
    EXPECT_NEAR(lovasz_eval_descending(v, x), expected, 1e-12);
    EXPECT_NEAR(lovasz_eval_maxform(v, x), expected, 1e-12);
    EXPECT_NEAR(lovasz_eval_split(v, x), expected, 1e-12);
  }
}

TEST(Lovasz, TieOrderDoesNotMatter) {
  const Tuple x{0.4, 0.4, 0.1};
  const SetFunction v(3, {0, 0.1, 0.2, 0.6, 0.3, 0.5, 0.4, 1});
  const double a = lovasz_eval_sorted(v, x, SortedView(x, {2, 0, 1}));
  const double b = lovasz_eval_sorted(v, x, SortedView(x, {2, 1, 0}));
  EXPECT_NEAR(a, b, 1e-15);
}

TEST(Lovasz, ArityMismatch) {
  EXPECT_THROW(lovasz_eval_sorted(kV, Tuple{1}), ArityMismatch);
  EXPECT_THROW(lovasz_eval_mobius(kA, Tuple{1, 2, 3}), ArityMismatch);
}

TEST(Choquet, WorkedExamples) {
  EXPECT_NEAR(choquet_integral(kV, Tuple{0.2, 0.7}), 0.45, 1e-15);
  EXPECT_NEAR(choquet_integral(kV, Tuple{0.6, 0.6}), 0.6, 1e-15);
  EXPECT_THROW(choquet_integral(SetFunction(2, {0, 0.3, 0.5, 0.2}), Tuple{0.2, 0.7}), NotACapacity);
  try {
    choquet_integral(SetFunction(2, {0, 0.3, 0.5, 0.2}), Tuple{0.2, 0.7});
  } catch (const NotACapacity& e) {
    EXPECT_EQ(e.smaller(), 1U);
    EXPECT_EQ(e.larger(), 3U);
  }
}

TEST(Symmetric, WorkedExamples) {
  EXPECT_NEAR(symmetric_lovasz_eval(kV, Tuple{-0.5, 0.7}), 0.2, 1e-15);
  EXPECT_NEAR(symmetric_lovasz_eval(kV, Tuple{0.5, -0.7}), -0.2, 1e-15);
  EXPECT_NEAR(symmetric_lovasz_eval(kV, Tuple{0.2, 0.7}), 0.45, 1e-15);
  EXPECT_NEAR(symmetric_lovasz_eval_piecewise(kV, Tuple{-0.5, 0.7}), 0.2, 1e-15);
}

TEST(Symmetric, PiecewiseFormAndOddness) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const oracle::Table raw = oracle::random_table(rng, n, -1, 1);
    const SetFunction v(n, raw);
    Tuple x(static_cast<std::size_t>(n));
    for (double& xi : x) xi = rng.uniform(-1, 1);
    const double value = symmetric_lovasz_eval(v, x);
    EXPECT_NEAR(value, oracle::symmetric_lovasz(raw, x), 1e-12);
    EXPECT_NEAR(symmetric_lovasz_eval_piecewise(v, x), value, 1e-12);
    EXPECT_NEAR(symmetric_lovasz_eval(v, negated(x)) - v[0], -(value - v[0]), 1e-12);
  }
}

}  // namespace
}  // namespace qlov
