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

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "packcover/linked_matrix.hpp"
#include "packcover/model.hpp"
#include "packcover/rng.hpp"
#include "packcover/sampler.hpp"
#include "packcover/wide_real.hpp"

namespace packcover {

enum class Variant {
  kSimple,  // exact sort, exact row bounds, no truncation
  kFast,    // truncation, pseudo-sort, z/2 traversal stop, doubled bounds
  kSlow,    // reference algorithm with exact M x and M^T xhat
};

std::string_view to_string(Variant v);
// Accepts "simple", "fast", "slow". Throws PreconditionError otherwise.
Variant parse_variant(std::string_view name);

// Guaranteed approximation factor 1 - k*eps for the variant: k = 6 simple,
// 7 fast, 2 slow.
int guarantee_multiplier(Variant v);

constexpr double kMaxEpsilon = 1.0 / 7.0;

struct SolveOptions {
  double eps = 0.1;
  Variant variant = Variant::kFast;
  std::uint64_t seed = 0;
  // Checks the per-iteration invariants (equal primal/dual sums, the
  // [1/4, 1] bound on the largest left-hand-side increase) and throws
  // InternalError on violation. Costs a full row and column scan per step.
  bool check_invariants = false;
};

struct OpCounters {
  std::uint64_t iterations = 0;
  std::uint64_t empty_iterations = 0;
  // sum_t |I_t| + |J_t|
  std::uint64_t increments = 0;
  // sum_t |I'_t| + |J'_t|: list cells visited while collecting I_t and J_t
  std::uint64_t traversed = 0;
  // cells unlinked by column retirement
  std::uint64_t deletions = 0;
  std::uint64_t retired_columns = 0;
  // entry updates applied to the four sampling vectors
  std::uint64_t sampler_updates = 0;
};

struct IterationTrace {
  Index row = 0;  // i'
  Index col = 0;  // j'
  double delta = 0.0;
  double z = 0.0;
  std::vector<Index> incremented_rows;  // I_t
  std::vector<Index> incremented_cols;  // J_t
  std::uint64_t traversed_rows = 0;     // |I'_t|
  std::uint64_t traversed_cols = 0;     // |J'_t|
  std::vector<Index> retired_cols;
  // max_i M_ij' delta and max_{j in J} M_i'j delta; only filled when
  // SolveOptions::check_invariants is set, NaN otherwise.
  double max_row_increase = 0.0;
  double max_col_increase = 0.0;

  bool empty() const {
    return incremented_rows.empty() && incremented_cols.empty();
  }
};

// Feasible primal/dual pair for the restricted form, scaled against the
// untruncated matrix.
struct SolutionPair {
  std::vector<double> primal;  // x*, length cols
  std::vector<double> dual;    // xhat*, length rows
  double primal_value = 0.0;
  double dual_value = 0.0;
  double ratio = 0.0;
  double max_row_load = 0.0;     // max_i M_i x before scaling
  double min_column_load = 0.0;  // min_j M_j^T xhat before scaling
  Variant variant = Variant::kFast;
  double eps = 0.0;
  std::uint64_t budget = 0;
  OpCounters counters;
};

// Solution of a GeneralInstance in its own variables.
struct GeneralSolution {
  std::vector<double> primal;  // x, length cols: A x <= b
  std::vector<double> dual;    // xhat, length original rows: A^T xhat >= a
  double primal_value = 0.0;   // a . x
  double dual_value = 0.0;     // b . xhat
};

// N = max(1, ceil(2 ln(rc) / eps^2)).
std::uint64_t iteration_budget(std::size_t rows, std::size_t cols, double eps);

// Draws (i, j) with probability proportional to p_i phat_j (uhat_i + u_j),
// given p, phat and the products p*uhat, phat*u. Draw order: one uniform
// for the branch, then the row sample, then the column sample. Throws
// InternalError when phat is all zero.
std::pair<Index, Index> random_pair(const SamplableVector& p,
                                    const SamplableVector& phat,
                                    const SamplableVector& p_times_uhat,
                                    const SamplableVector& phat_times_u,
                                    Rng& rng);

// One run of the full algorithm in its simple or fast implementation.
//
// A Solver is a value type: copying it yields an independent frozen state
// that can be stepped separately (after reseed()), which is what the
// Monte Carlo checks in verify.hpp rely on.
class Solver {
 public:
  // `normalized` is the restricted-form matrix. Throws PreconditionError
  // for eps outside (0, 1/7] or variant kSlow, EmptyColumnError for an empty
  // column.
  Solver(std::shared_ptr<const CooMatrix> normalized, const SolveOptions& options);

  bool done() const;
  // One outer iteration. The returned trace is owned by the solver and
  // overwritten by the next call.
  const IterationTrace& step();
  // Steps until done(); returns the number of iterations run.
  std::uint64_t run();
  // Exact products against the untruncated matrix, then scaling.
  SolutionPair finalize() const;

  // Restarts the random stream; state vectors are untouched.
  void reseed(std::uint64_t seed, std::uint64_t stream = 0);

  std::size_t rows() const { return y_.size(); }
  std::size_t cols() const { return yhat_.size(); }
  double eps() const { return options_.eps; }
  Variant variant() const { return options_.variant; }
  std::uint64_t budget() const { return budget_; }
  const OpCounters& counters() const { return counters_; }

  std::span<const double> primal() const { return x_; }
  std::span<const double> dual() const { return xhat_; }
  double primal_sum() const { return x_sum_; }
  double dual_sum() const { return xhat_sum_; }
  std::span<const std::uint64_t> row_counts() const { return y_; }
  std::span<const std::uint64_t> column_counts() const { return yhat_; }
  double row_bound(Index i) const { return uhat_[i]; }
  double column_bound(Index j) const { return u_[j]; }
  bool active(Index j) const { return active_[j] != 0; }
  std::size_t active_count() const { return active_count_; }
  std::uint64_t max_row_count() const { return max_y_; }

  const SamplableVector& p() const { return p_; }
  const SamplableVector& phat() const { return phat_; }
  const SamplableVector& p_times_uhat() const { return p_uhat_; }
  const SamplableVector& phat_times_u() const { return phat_u_; }
  // |p| * |phat|
  WideReal potential() const { return p_.total() * phat_.total(); }

  // Matrix the iterations run on: truncated for kFast, as given otherwise.
  const LinkedMatrix& working_matrix() const { return working_; }
  const CooMatrix& original_matrix() const { return *original_; }

 private:
  void collect_rows(IterationTrace& t);
  void collect_cols(IterationTrace& t);
  void retire(Index j);
  void check_step(IterationTrace& t) const;

  std::shared_ptr<const CooMatrix> original_;
  SolveOptions options_;
  std::uint64_t budget_ = 0;
  double up_factor_ = 1.0;
  double down_factor_ = 1.0;

  LinkedMatrix working_;
  std::vector<double> x_, xhat_;
  double x_sum_ = 0.0, xhat_sum_ = 0.0;
  std::vector<std::uint64_t> y_, yhat_;
  std::vector<double> u_, uhat_;
  std::vector<std::uint8_t> active_;
  std::size_t active_count_ = 0;
  std::size_t active_at_budget_ = 0;
  std::uint64_t max_y_ = 0;

  SamplableVector p_, phat_, p_uhat_, phat_u_;
  Rng rng_;
  OpCounters counters_;
  IterationTrace trace_;
};

// Reference algorithm: unit increments against exact M x and M^T xhat, with
// p and phat recomputed from those loads. Requires every entry in (0, 1].
SolutionPair solve_slow(const CooMatrix& m, double eps, std::uint64_t seed);

// Runs the requested variant to completion. kSlow first divides M by its
// largest entry when that exceeds 1; the final scaling is invariant to it.
SolutionPair solve(std::shared_ptr<const CooMatrix> normalized,
                   const SolveOptions& options);
SolutionPair solve(const CooMatrix& normalized, const SolveOptions& options);

// Scaling step shared by every variant: x / max_i M_i x and
// xhat / min_j M_j^T xhat. Throws InternalError when either load is zero.
SolutionPair scale_pair(const CooMatrix& m, std::span<const double> x,
                        std::span<const double> xhat);

// Maps a restricted-form pair back through the normalization record.
GeneralSolution to_general(const NormalizationRecord& record,
                           const SolutionPair& pair);

}  // namespace packcover
