// Copyright 2026 The RegTopK Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "regtopk/vecmath.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "regtopk/errors.hpp"
#include "test_util.hpp"

namespace regtopk {
namespace {

TEST(VecmathTest, Dot) {
  EXPECT_EQ(dot(DenseVector{0, 1}, DenseVector{100, 1}), 1.0);
  EXPECT_EQ(dot(DenseVector{1, 2, 3}, DenseVector{4, 5, 6}), 32.0);
  EXPECT_EQ(dot(DenseVector{7, -3}, DenseVector(2)), 0.0);
  EXPECT_THROW(dot(DenseVector{1, 2}, DenseVector{1}), DimensionError);
}

TEST(VecmathTest, Axpy) {
  EXPECT_EQ(axpy(-0.9, DenseVector{0, 0}, DenseVector{0, 1}), (DenseVector{0, 1}));
  EXPECT_EQ(axpy(1, DenseVector{1, 1}, DenseVector{2, 3}), (DenseVector{3, 4}));
  EXPECT_EQ(axpy(-0.5, DenseVector{2, 4}, DenseVector{1, 1}), (DenseVector{0, -1}));
  EXPECT_THROW(axpy(1, DenseVector{1}, DenseVector{1, 2}), DimensionError);
}

TEST(VecmathTest, Norm) {
  EXPECT_EQ(l2_norm(DenseVector{0, 0, 0}), 0.0);
  EXPECT_EQ(l2_norm(DenseVector{3, 4}), 5.0);
  EXPECT_EQ(l2_norm(DenseVector{1, 1, 1, 1}), 2.0);
}

TEST(VecmathTest, DotSymmetryAndNormConsistency) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(64);
    const auto x = testing::random_vector(rng, n, 10.0);
    const auto y = testing::random_vector(rng, n, 0.1);
    EXPECT_LE(std::abs(dot(x, y) - dot(y, x)), 1e-12 * l2_norm(x) * l2_norm(y));
    const double nx = l2_norm(x);
    EXPECT_NEAR(nx * nx, dot(x, x), 1e-12 * dot(x, x));
  }
}

TEST(VecmathTest, SolveSpdSmall) {
  const DenseVector b{3, -1, 2};
  EXPECT_EQ(solve_spd(SpdMatrix::identity(3), b), b);
  SpdMatrix d(2);
  d(0, 0) = 4;
  d(1, 1) = 2;
  const auto x = solve_spd(d, DenseVector{8, 2});
  EXPECT_NEAR(x[0], 2.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(VecmathTest, SolveSpdGramResidual) {
  Rng rng(5);
  const std::size_t rows = 12, dim = 5;
  const auto data = testing::random_regression(rng, rows, dim);
  SpdMatrix gram(dim);
  DenseVector rhs(dim);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto x = data.row(i);
    for (std::size_t r = 0; r < dim; ++r) {
      rhs[r] += x[r] * data.label(i);
      for (std::size_t c = 0; c < dim; ++c) gram(r, c) += x[r] * x[c];
    }
  }
  const auto x = solve_spd(gram, rhs);
  EXPECT_LE(l2_norm(subtract(gram.multiply(x), rhs)), 1e-8);
}

TEST(VecmathTest, SolveSpdRandomUpTo200) {
  Rng rng(99);
  for (std::size_t dim : {1u, 7u, 50u, 200u}) {
    // B^T B + I is SPD by construction.
    std::vector<DenseVector> rows;
    for (std::size_t i = 0; i < dim; ++i) rows.push_back(testing::random_vector(rng, dim));
    SpdMatrix a(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        double s = r == c ? 1.0 : 0.0;
        for (std::size_t k = 0; k < dim; ++k) s += rows[k][r] * rows[k][c];
        a(r, c) = s;
      }
    }
    const auto b = testing::random_vector(rng, dim);
    const auto x = solve_spd(a, b);
    EXPECT_LE(l2_norm(subtract(a.multiply(x), b)), 1e-8 * (1.0 + l2_norm(b))) << "dim " << dim;
  }
}

TEST(VecmathTest, SolveSpdRejectsIndefinite) {
  SpdMatrix a(2);
  a(0, 0) = 1;
  a(0, 1) = a(1, 0) = 1;
  a(1, 1) = 1;  // singular
  EXPECT_THROW(solve_spd(a, DenseVector{1, 1}), IndefiniteMatrixError);
  SpdMatrix neg(1);
  neg(0, 0) = -2;
  EXPECT_THROW(solve_spd(neg, DenseVector{1}), IndefiniteMatrixError);
}

TEST(VecmathTest, RequireFinite) {
  EXPECT_NO_THROW(require_finite(DenseVector{1, 2}, "x"));
  EXPECT_THROW(require_finite(DenseVector{1, std::nan("")}, "x"), NumericError);
  EXPECT_TRUE(has_nan(DenseVector{std::nan("")}));
}

}  // namespace
}  // namespace regtopk
