// Copyright 2026 The packcover Authors
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

#include "packcover/model.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "packcover/errors.hpp"

namespace packcover {
namespace {

CooMatrix dense(std::size_t r, std::size_t c, const std::vector<double>& v) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (v[i * c + j] != 0.0) {
        t.push_back({static_cast<Index>(i), static_cast<Index>(j), v[i * c + j]});
      }
    }
  }
  return CooMatrix(r, c, std::move(t));
}

TEST(CooMatrixTest, SortsEntriesByRowThenColumn) {
  const CooMatrix m(2, 2, {{1, 0, 3.0}, {0, 1, 2.0}, {0, 0, 1.0}});
  ASSERT_EQ(m.nnz(), 3u);
  EXPECT_EQ(m.entries()[0], (Triplet{0, 0, 1.0}));
  EXPECT_EQ(m.entries()[1], (Triplet{0, 1, 2.0}));
  EXPECT_EQ(m.entries()[2], (Triplet{1, 0, 3.0}));
}

TEST(CooMatrixTest, RejectsBadEntries) {
  EXPECT_THROW(CooMatrix(2, 2, {{2, 0, 1.0}}), InvalidInstance);
  EXPECT_THROW(CooMatrix(2, 2, {{0, 2, 1.0}}), InvalidInstance);
  EXPECT_THROW(CooMatrix(2, 2, {{0, 0, -1.0}}), InvalidInstance);
  EXPECT_THROW(CooMatrix(2, 2, {{0, 0, 0.0}}), InvalidInstance);
  EXPECT_THROW(CooMatrix(2, 2, {{0, 0, std::nan("")}}), InvalidInstance);
  EXPECT_THROW(CooMatrix(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}), InvalidInstance);
}

TEST(CooMatrixTest, RowAndColumnSummaries) {
  const CooMatrix m = dense(2, 3, {1, 0, 4, 2, 0, 1});
  EXPECT_EQ(m.row_max(), (std::vector<double>{4, 2}));
  EXPECT_EQ(m.column_max(), (std::vector<double>{2, 0, 4}));
  EXPECT_EQ(m.row_counts(), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(m.column_counts(), (std::vector<std::size_t>{2, 0, 2}));
  EXPECT_EQ(m.max_value(), 4.0);
  EXPECT_EQ(m.to_dense(), (std::vector<double>{1, 0, 4, 2, 0, 1}));
}

TEST(NormalizeTest, DividesByCapacityAndObjective) {
  GeneralInstance inst{dense(2, 2, {1, 3, 2, 0}), {2, 1}, {1, 4}};
  const NormalizedInstance n = normalize(inst);
  EXPECT_EQ(n.matrix, dense(2, 2, {0.5, 0.375, 2, 0}));
  EXPECT_TRUE(n.record.warnings.empty());
  EXPECT_EQ(n.record.kept_rows, (std::vector<Index>{0, 1}));
}

TEST(NormalizeTest, DropsZeroRowsWithWarning) {
  GeneralInstance inst = unit_instance(dense(3, 2, {1, 0, 0, 0, 0, 2}));
  const NormalizedInstance n = normalize(inst);
  EXPECT_EQ(n.matrix.rows(), 2u);
  EXPECT_EQ(n.record.kept_rows, (std::vector<Index>{0, 2}));
  EXPECT_EQ(n.record.original_rows, 3u);
  ASSERT_EQ(n.record.warnings.size(), 1u);
  EXPECT_NE(n.record.warnings[0].find("row 1"), std::string::npos);
}

TEST(NormalizeTest, RejectsInvalidInstances) {
  EXPECT_THROW(normalize(unit_instance(dense(2, 2, {1, 0, 1, 0}))),
               EmptyColumnError);
  GeneralInstance bad_b{dense(1, 1, {1}), {0.0}, {1}};
  EXPECT_THROW(normalize(bad_b), InvalidInstance);
  GeneralInstance bad_a{dense(1, 1, {1}), {1}, {-1}};
  EXPECT_THROW(normalize(bad_a), InvalidInstance);
  GeneralInstance short_b{dense(2, 1, {1, 1}), {1}, {1}};
  EXPECT_THROW(normalize(short_b), InvalidInstance);
}

TEST(TruncateTest, DropsSmallEntriesAndCapsLargeOnes) {
  // beta = min(4, 1) = 1; drop below 1*0.5/2, cap at 1*2/0.5.
  EXPECT_EQ(truncate(dense(2, 2, {4, 0.001, 2, 1}), 0.5),
            dense(2, 2, {4, 0, 2, 1}));
  // beta = 1, eps = 0.1, c = 2: cap at 20.
  EXPECT_EQ(truncate(dense(2, 2, {100, 0, 0, 1}), 0.1),
            dense(2, 2, {20, 0, 0, 1}));
}

TEST(TruncateTest, KeepsEveryColumnNonempty) {
  const GeneralInstance inst = generate_random(40, 30, 0.2, 5);
  std::vector<Triplet> t(inst.matrix.entries().begin(), inst.matrix.entries().end());
  for (std::size_t k = 0; k < t.size(); ++k) t[k].value = std::exp(static_cast<double>(k % 40) - 20.0);
  const CooMatrix wide(inst.matrix.rows(), inst.matrix.cols(), t);
  const CooMatrix tr = truncate(wide, 0.1);
  for (const std::size_t c : tr.column_counts()) EXPECT_GT(c, 0u);
  const double beta = [&] {
    double b = 1e300;
    for (const double v : wide.column_max()) b = std::min(b, v);
    return b;
  }();
  for (const Triplet& e : tr.entries()) {
    EXPECT_GE(e.value, beta * 0.1 / 30);
    EXPECT_LE(e.value, beta * 30 / 0.1);
  }
}

TEST(TruncateTest, Preconditions) {
  EXPECT_THROW(truncate(dense(1, 1, {1}), 0.0), PreconditionError);
  EXPECT_THROW(truncate(dense(1, 1, {1}), 1.0), PreconditionError);
  EXPECT_THROW(truncate(dense(1, 2, {1, 0}), 0.1), PreconditionError);
}

TEST(ProductsTest, MatchesHandComputation) {
  const CooMatrix m = dense(2, 2, {1, 2, 2, 1});
  const std::vector<double> ones{1, 1};
  const Products p = exact_products(m, ones, ones);
  EXPECT_EQ(p.mx, (std::vector<double>{3, 3}));
  EXPECT_EQ(p.mtxh, (std::vector<double>{3, 3}));
  EXPECT_EQ(multiply(dense(2, 3, {1, 0, 2, 0, 3, 0}), std::vector<double>{1, 2, 3}),
            (std::vector<double>{7, 6}));
  EXPECT_EQ(multiply_transposed(dense(2, 3, {1, 0, 2, 0, 3, 0}),
                                std::vector<double>{1, 2}),
            (std::vector<double>{1, 6, 2}));
  EXPECT_THROW(multiply(m, std::vector<double>{1}), InvalidInstance);
  EXPECT_THROW(exact_products(m, ones, std::vector<double>{1, 2, 3}),
               InvalidInstance);
}

TEST(GenerateRandomTest, DensityMatchesBinomial) {
  const GeneralInstance inst = generate_random(100, 100, 0.25, 7);
  // Binomial(10^4, 1/4): mean 2500, sd 43.3; 175 is about 4 sd.
  EXPECT_NEAR(static_cast<double>(inst.matrix.nnz()), 2500.0, 175.0);
  EXPECT_EQ(inst.capacities, std::vector<double>(100, 1.0));
  EXPECT_EQ(inst.objective, std::vector<double>(100, 1.0));
}

TEST(GenerateRandomTest, FullDensityIsAllOnes) {
  EXPECT_EQ(generate_random(10, 10, 1.0, 1).matrix.nnz(), 100u);
}

TEST(GenerateRandomTest, DeterministicAndSeedDependent) {
  EXPECT_EQ(generate_random(30, 20, 0.3, 11).matrix,
            generate_random(30, 20, 0.3, 11).matrix);
  EXPECT_NE(generate_random(30, 20, 0.3, 11).matrix,
            generate_random(30, 20, 0.3, 12).matrix);
}

TEST(GenerateRandomTest, NoEmptyRowsOrColumnsAtLowDensity) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GeneralInstance inst = generate_random(25, 35, 0.01, seed);
    for (const std::size_t c : inst.matrix.row_counts()) EXPECT_GT(c, 0u);
    for (const std::size_t c : inst.matrix.column_counts()) EXPECT_GT(c, 0u);
  }
}

TEST(GenerateRandomTest, Preconditions) {
  EXPECT_THROW(generate_random(0, 5, 0.5, 1), PreconditionError);
  EXPECT_THROW(generate_random(5, 5, 0.0, 1), PreconditionError);
  EXPECT_THROW(generate_random(5, 5, 1.5, 1), PreconditionError);
}

TEST(FloorLog2Test, ReadsBinaryExponent) {
  EXPECT_EQ(floor_log2(1.0), 0);
  EXPECT_EQ(floor_log2(1.999), 0);
  EXPECT_EQ(floor_log2(2.0), 1);
  EXPECT_EQ(floor_log2(0.75), -1);
  EXPECT_EQ(floor_log2(0x1p-1000), -1000);
}

}  // namespace
}  // namespace packcover
