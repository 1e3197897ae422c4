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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "packcover/model.hpp"
#include "packcover/solver.hpp"

namespace packcover {

constexpr double kFeasibilityTolerance = 1e-9;

struct Certificate {
  double max_violation = 0.0;  // max_i (M_i x* - 1)
  double min_slack = 0.0;      // min_j (M_j^T xhat* - 1)
  double primal_value = 0.0;
  double dual_value = 0.0;
  double ratio = 0.0;          // |x*| / |xhat*|
  double target = 0.0;         // 1 - k eps
  std::optional<double> oracle_value;
  std::optional<double> oracle_gap;  // |x*| / OPT
  bool pass = false;
};

// Restricted form: violation and slack of M x* <= 1 and M^T xhat* >= 1.
// Throws InvalidInstance on dimension mismatch.
Certificate certify(const CooMatrix& m, std::span<const double> primal,
                    std::span<const double> dual, double eps, Variant variant,
                    std::optional<double> oracle_value = std::nullopt);
Certificate certify(const CooMatrix& m, const SolutionPair& pair,
                    std::optional<double> oracle_value = std::nullopt);

// Original variables: violation of A x <= b and slack of A^T xhat >= a, both
// measured relative to b_i and a_j. `oracle_value` is OPT of the general LP.
Certificate certify(const GeneralInstance& inst, std::span<const double> primal,
                    std::span<const double> dual, double eps, Variant variant,
                    std::optional<double> oracle_value = std::nullopt);

struct PropertyCheck {
  std::string name;
  std::uint64_t sample_size = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct StatReport {
  std::vector<PropertyCheck> checks;

  bool pass() const;
  const PropertyCheck* find(const std::string& name) const;
  void append(const StatReport& other);
};

// increment_budget: sum |I_t|+|J_t| <= (r+c) N, deterministic.
// empty_rate: empty fraction <= 3/4 + 5 sigma, sigma = sqrt(3/16 / T).
// traversal_overhead: sum 1+|I'_t|+|J'_t| <= 32 (r+c) N; exceeding
// 8 (r+c) N is noted in the detail text but does not fail.
StatReport audit_counters(const OpCounters& counters, std::size_t rows,
                          std::size_t cols, std::uint64_t budget);

constexpr std::uint64_t kMinMonteCarloTrials = 1000;

// Runs `trials` independent single steps from copies of `frozen` (trial t
// uses stream t of `seed`) and tests E[|p'||phat'| - |p||phat|] <= 0:
// pass iff the mean relative change is at most 3 standard errors.
// Throws PreconditionError when trials < 1000, the solver is done, or no
// column is active.
PropertyCheck drift_test(const Solver& frozen, std::uint64_t trials,
                         std::uint64_t seed);

// Per-coordinate paired test of E[dy_i] = E[(M dx)_i] for every row and
// E[dyhat_j] = E[(M^T dxhat)_j] for every active column, on the working
// matrix. Threshold max(4, Bonferroni z at family-wise level 1e-3).
PropertyCheck tracking_test(const Solver& frozen, std::uint64_t trials,
                            std::uint64_t seed);

// Fraction of runs whose ratio meets `target`, against `required`.
PropertyCheck approx_success_rate(std::span<const double> ratios, double target,
                                  double required);

// Two-sided standard normal quantile: z with P(|Z| > z) = alpha.
double normal_two_sided_quantile(double alpha);

}  // namespace packcover
