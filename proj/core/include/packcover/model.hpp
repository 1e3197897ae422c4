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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace packcover {

using Index = std::uint32_t;

struct Triplet {
  Index row;
  Index col;
  double value;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

// Immutable sparse nonnegative matrix in coordinate form. Entries are kept
// sorted by (row, col); every stored value is finite and strictly positive.
class CooMatrix {
 public:
  CooMatrix() = default;
  // Throws InvalidInstance on out-of-range indices, duplicates, or values
  // that are not finite and > 0.
  CooMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  std::span<const Triplet> entries() const { return entries_; }

  std::vector<double> column_max() const;
  std::vector<double> row_max() const;
  std::vector<std::size_t> row_counts() const;
  std::vector<std::size_t> column_counts() const;
  double max_value() const;

  // Row-major dense copy, rows() * cols() doubles.
  std::vector<double> to_dense() const;

  friend bool operator==(const CooMatrix&, const CooMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;
};

// max{ a.x : A x <= b, x >= 0 } with A >= 0, b > 0, a > 0.
struct GeneralInstance {
  CooMatrix matrix;
  std::vector<double> capacities;  // b, one per row
  std::vector<double> objective;   // a, one per column
};

// Everything needed to map a restricted-form solution back to the
// variables of the GeneralInstance it came from.
struct NormalizationRecord {
  std::vector<double> capacities;
  std::vector<double> objective;
  // kept_rows[k] is the original index of normalized row k.
  std::vector<Index> kept_rows;
  std::size_t original_rows = 0;
  std::vector<std::string> warnings;
};

// Restricted form max{ |x| : M x <= 1 } with M_ij = A_ij / (b_i a_j).
struct NormalizedInstance {
  CooMatrix matrix;
  NormalizationRecord record;
};

// Throws InvalidInstance for size mismatches or non-positive b/a, and
// EmptyColumnError for a column without entries. All-zero rows are dropped
// and reported in record.warnings.
NormalizedInstance normalize(const GeneralInstance& inst);

// Instance with b = 1 and a = 1 around an existing matrix.
GeneralInstance unit_instance(CooMatrix matrix);

// Drops entries below beta*eps/c and caps the rest at beta*c/eps, where
// beta = min_j max_i M_ij. Requires eps in (0,1) and no empty column.
CooMatrix truncate(const CooMatrix& m, double eps);

struct Products {
  std::vector<double> mx;    // M x, length rows
  std::vector<double> mtxh;  // M^T xhat, length cols
};

// One pass over the nonzeros. Throws InvalidInstance on dimension mismatch.
Products exact_products(const CooMatrix& m, std::span<const double> x,
                        std::span<const double> xhat);
std::vector<double> multiply(const CooMatrix& m, std::span<const double> x);
std::vector<double> multiply_transposed(const CooMatrix& m,
                                        std::span<const double> xhat);

// Random 0/1 instance: every cell is 1 independently with probability
// `density`; b = a = 1. All-zero rows, then all-zero columns, are redrawn
// until nonempty. Deterministic in `seed`.
GeneralInstance generate_random(std::size_t rows, std::size_t cols,
                                double density, std::uint64_t seed);

// floor(log2(v)) for finite v > 0, read off the binary exponent.
int floor_log2(double v);

}  // namespace packcover
