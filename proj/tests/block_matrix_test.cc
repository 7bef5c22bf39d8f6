// Copyright (c) the dctfilter project authors
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

#include "dctfilter/block_matrix.hpp"

#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "test_util.h"

namespace dctfilter {
namespace {

TEST(BlockMatrixTest, MatmulIdentity) {
  std::mt19937_64 rng(1);
  const BlockMatrix m = test::random_block(rng, 8, -1.0, 1.0);
  EXPECT_EQ(max_abs_diff(matmul(BlockMatrix::identity(8), m), m), 0.0);
  EXPECT_EQ(max_abs_diff(matmul(m, BlockMatrix::identity(8)), m), 0.0);
}

TEST(BlockMatrixTest, MatmulAnnihilator) {
  std::mt19937_64 rng(2);
  const BlockMatrix m = test::random_block(rng, 8, -1.0, 1.0);
  const BlockMatrix z(8);
  EXPECT_EQ(max_abs_diff(matmul(m, z), z), 0.0);
}

TEST(BlockMatrixTest, MatmulPermutationSwapsColumns) {
  const BlockMatrix m(2, {1, 2, 3, 4});
  const BlockMatrix p(2, {0, 1, 1, 0});
  const BlockMatrix expected(2, {2, 1, 4, 3});
  EXPECT_EQ(max_abs_diff(matmul(m, p), expected), 0.0);
}

TEST(BlockMatrixTest, MatmulDimensionMismatch) {
  EXPECT_THROW(matmul(BlockMatrix(2), BlockMatrix(3)), std::invalid_argument);
}

TEST(BlockMatrixTest, Transpose) {
  EXPECT_EQ(max_abs_diff(transpose(BlockMatrix::identity(8)), BlockMatrix::identity(8)), 0.0);
  const BlockMatrix m(2, {0, 1, 0, 0});
  const BlockMatrix expected(2, {0, 0, 1, 0});
  EXPECT_EQ(max_abs_diff(transpose(m), expected), 0.0);

  std::mt19937_64 rng(3);
  const BlockMatrix r = test::random_block(rng, 8, -1.0, 1.0);
  EXPECT_EQ(max_abs_diff(transpose(transpose(r)), r), 0.0);
}

TEST(BlockMatrixTest, Add) {
  std::mt19937_64 rng(4);
  const BlockMatrix m = test::random_block(rng, 8, -1.0, 1.0);
  const BlockMatrix z(8);
  EXPECT_EQ(max_abs_diff(add(m, z), m), 0.0);

  BlockMatrix neg = m;
  for (double& v : neg.data()) v = -v;
  EXPECT_EQ(max_abs_diff(add(m, neg), z), 0.0);

  EXPECT_EQ(max_abs_diff(add(BlockMatrix(1, {1.0}), BlockMatrix(1, {2.0})),
                         BlockMatrix(1, {3.0})),
            0.0);
  EXPECT_THROW(add(BlockMatrix(2), BlockMatrix(3)), std::invalid_argument);
}

TEST(BlockMatrixTest, MaxAbsDiff) {
  std::mt19937_64 rng(5);
  const BlockMatrix m = test::random_block(rng, 8, -1.0, 1.0);
  EXPECT_EQ(max_abs_diff(m, m), 0.0);
  EXPECT_EQ(max_abs_diff(BlockMatrix(1, {1.0}), BlockMatrix(1, {3.0})), 2.0);

  BlockMatrix perturbed = m;
  perturbed(0, 0) += 0.5;
  EXPECT_DOUBLE_EQ(max_abs_diff(m, perturbed), 0.5);
  EXPECT_THROW(max_abs_diff(BlockMatrix(2), BlockMatrix(3)), std::invalid_argument);
}

TEST(BlockMatrixTest, InvalidConstruction) {
  EXPECT_THROW(BlockMatrix(0), std::invalid_argument);
  EXPECT_THROW(BlockMatrix(2, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST(BlockMatrixTest, AssociativityAndDistributivity) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const BlockMatrix a = test::random_block(rng, 8, -1.0, 1.0);
    const BlockMatrix b = test::random_block(rng, 8, -1.0, 1.0);
    const BlockMatrix c = test::random_block(rng, 8, -1.0, 1.0);
    EXPECT_LT(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))), 1e-12);
    EXPECT_EQ(max_abs_diff(add(a, b), add(b, a)), 0.0);
    EXPECT_LT(max_abs_diff(matmul(a, add(b, c)), add(matmul(a, b), matmul(a, c))), 1e-12);
  }
}

TEST(BlockMatrixTest, TransposeOfProduct) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const BlockMatrix a = test::random_block(rng, 8, -1.0, 1.0);
    const BlockMatrix b = test::random_block(rng, 8, -1.0, 1.0);
    EXPECT_LT(max_abs_diff(transpose(matmul(a, b)),
                           matmul(transpose(b), transpose(a))),
              1e-12);
  }
}

}  // namespace
}  // namespace dctfilter
