// Copyright 2026 The cs-secrecy Authors.
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

#include "cssecrecy/ripcheck.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace cssecrecy {
namespace {

MeasurementMatrix Identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return MeasurementMatrix::from_entries(n, n, e);
}

TEST(RipConstant, IdentityIsIsometric) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const RipReport r = rip_constant(Identity(6), k);
    EXPECT_EQ(r.epsilon_k, 0.0);
    EXPECT_TRUE(r.satisfied);
    EXPECT_EQ(r.supports_checked, binomial(6, k));
  }
}

TEST(RipConstant, ColumnNormTwoBreaksUpperBand) {
  const auto a = MeasurementMatrix::from_entries(2, 2, {1, 0, 0, 2});
  const RipReport r = rip_constant(a, 1);
  EXPECT_DOUBLE_EQ(r.epsilon_k, 1.0);
  EXPECT_FALSE(r.satisfied);
  EXPECT_EQ(r.extremal_support, (std::vector<std::size_t>{1}));
}

TEST(RipConstant, SamplingNeverBeatsEnumeration) {
  const auto a = derive_matrix({7, 16, 32});
  const RipReport r = rip_constant(a, 2);
  EXPECT_EQ(r.supports_checked, 496u);
  const double sampled = testing::sampled_rip_lower_bound(a, 2, 20000, 99);
  EXPECT_LE(sampled, r.epsilon_k + 1e-10);
  EXPECT_GT(sampled, 0.0);
}

TEST(RipConstant, MonotoneInOrder) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = derive_matrix({seed, 8, 14});
    double prev = 0.0;
    for (std::size_t k = 1; k <= 5; ++k) {
      const RipReport r = rip_constant(a, k);
      EXPECT_GE(r.epsilon_k, prev);
      EXPECT_EQ(r.satisfied, r.epsilon_k < 1.0);
      prev = r.epsilon_k;
    }
  }
}

TEST(RipConstant, BandContainsEverySparseVectorWhenSatisfied) {
  const auto a = derive_matrix({11, 12, 20});
  const RipReport r = rip_constant(a, 2);
  ASSERT_TRUE(r.satisfied);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto x = testing::random_sparse(20, 2, rng);
    const double nx = norm2(x);
    const double ny = testing::image_norm(a, x);
    EXPECT_GE(ny, (1.0 - r.epsilon_k) * nx - 1e-12);
    EXPECT_LE(ny, (1.0 + r.epsilon_k) * nx + 1e-12);
  }
}

TEST(RipConstant, Errors) {
  const auto a = derive_matrix({7, 16, 32});
  EXPECT_THROW(rip_constant(a, 0), DomainError);
  EXPECT_THROW(rip_constant(a, 17), DomainError);
  EXPECT_THROW(rip_constant(a, 3, 100), BudgetError);
}

TEST(Spark, ZeroColumn) {
  const auto a = MeasurementMatrix::from_entries(2, 3, {1, 0, 0, 0, 0, 1});
  const SparkReport r = spark(a);
  EXPECT_EQ(r.spark, 1u);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{1}));
}

TEST(Spark, ThreeColumnsInThePlane) {
  const auto a = MeasurementMatrix::from_entries(2, 3, {1, 0, 1, 0, 1, 1});
  const SparkReport r = spark(a);
  EXPECT_EQ(r.spark, 3u);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Spark, IdentityIsFullyIndependent) {
  const SparkReport r = spark(Identity(5));
  EXPECT_EQ(r.spark, 6u);
  EXPECT_TRUE(r.witness.empty());
}

TEST(Spark, ParallelColumns) {
  const auto a = MeasurementMatrix::from_entries(3, 4, {1, 0, 2, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  const SparkReport r = spark(a);
  EXPECT_EQ(r.spark, 2u);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 2}));
}

TEST(Spark, GaussianMatricesAreFullSpark) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = derive_matrix({seed, 4, 9});
    const SparkReport r = spark(a);
    EXPECT_EQ(r.spark, 5u);
    // Witness is minimal: dropping any column leaves an independent set.
    for (std::size_t drop = 0; drop < r.witness.size(); ++drop) {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < r.witness.size(); ++i) {
        if (i != drop) sub.push_back(r.witness[i]);
      }
      EXPECT_EQ(numerical_rank(gather_columns(a, sub)), sub.size());
    }
    EXPECT_TRUE(spark_exceeds(a, 4));
    EXPECT_FALSE(spark_exceeds(a, 5));
  }
}

TEST(Spark, SparkExceedsAgreesWithSpark) {
  std::vector<double> e = {1, 0, 0, 1, 1,  //
                           0, 1, 0, 1, 2,  //
                           0, 0, 1, 0, 3,  //
                           0, 0, 0, 0, 4};
  const auto a = MeasurementMatrix::from_entries(4, 5, e);
  const SparkReport r = spark(a);
  EXPECT_EQ(r.spark, 3u);
  EXPECT_TRUE(spark_exceeds(a, 2));
  EXPECT_FALSE(spark_exceeds(a, 3));
  EXPECT_TRUE(spark_exceeds(Identity(3), 3));
}

TEST(Spark, BudgetError) {
  EXPECT_THROW(spark(derive_matrix({7, 16, 32})), BudgetError);
  EXPECT_THROW(spark_exceeds(derive_matrix({7, 16, 32}), 6, 1000), BudgetError);
}

TEST(UniqueProjection, DuplicatesAreIgnored) {
  const auto a = derive_matrix({1, 3, 6});
  const SparseMessage x({1, 0, 0, 0, 0, 0});
  const SparseMessage z({0, 0, 1, 0, 0, 0});
  const ProjectionReport r = unique_projection_check(a, {x, x, z});
  EXPECT_TRUE(r.injective);
  EXPECT_GT(r.min_pairwise_distance, 0.0);
  EXPECT_EQ(r.closest_pair->second, 2u);
}

TEST(UniqueProjection, AgreesWithSparkCriterion) {
  const auto a = derive_matrix({3, 6, 8});
  const bool spark_gt4 = spark(a).spark > 4;
  const ProjectionReport r = unique_projection_check(a, testing::all_pm1_messages(8, 2));
  EXPECT_TRUE(spark_gt4);
  EXPECT_EQ(r.injective, spark_gt4);
}

TEST(UniqueProjection, ZeroAndFirstBasisVector) {
  const std::vector<SparseMessage> msgs = {SparseMessage({0, 0}), SparseMessage({1, 0})};
  EXPECT_TRUE(unique_projection_check(
                  MeasurementMatrix::from_entries(1, 2, {0.5, 0}), msgs).injective);
  const ProjectionReport dead =
      unique_projection_check(MeasurementMatrix::from_entries(1, 2, {0, 1}), msgs);
  EXPECT_FALSE(dead.injective);
  ASSERT_TRUE(dead.colliding_pair.has_value());
  EXPECT_EQ(*dead.colliding_pair, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(UniqueProjection, DimensionMismatch) {
  EXPECT_THROW(unique_projection_check(derive_matrix({1, 2, 3}), {SparseMessage({1, 0})}),
               DimensionError);
}

}  // namespace
}  // namespace cssecrecy
