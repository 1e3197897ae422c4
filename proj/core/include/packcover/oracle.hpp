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
#include <string_view>
#include <vector>

#include "packcover/model.hpp"

namespace packcover {

// Row-major dense matrix for the desk-scale exact oracle.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static DenseMatrix from(const CooMatrix& m);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }
};

enum class OracleStatus { kOptimal, kUnbounded, kInfeasible };
std::string_view to_string(OracleStatus s);

struct OracleResult {
  OracleStatus status = OracleStatus::kOptimal;
  double value = 0.0;
  std::vector<double> primal;  // length cols
  std::vector<double> dual;    // length rows
  std::uint64_t pivots = 0;
};

constexpr std::size_t kOracleMaxDim = 300;

// General dense LP max{ c.x : A x <= b, x >= 0 }, two-phase tableau simplex
// with Bland's rule for both the entering and the leaving variable.
OracleResult solve_dense_lp(const DenseMatrix& a, const std::vector<double>& b,
                            const std::vector<double>& c);

// max{ |x| : M x <= 1, x >= 0 } for nonnegative M of at most 300 x 300.
// Throws PreconditionError above the size cap or for a negative entry.
OracleResult solve_exact(const DenseMatrix& m);
OracleResult solve_exact(const CooMatrix& m);

// Grid-search value of max{ |x| : M x <= 1 } for M with at most 3 columns.
// The last coordinate is set to its largest feasible value; the others are
// searched on a 1000-step grid over [0, 1/max_i M_ij] and then once more on
// a 1000-step grid spanning two coarse cells around the best point.
double brute_force_tiny(const DenseMatrix& m);

}  // namespace packcover
