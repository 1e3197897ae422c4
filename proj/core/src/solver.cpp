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

#include "packcover/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "packcover/errors.hpp"

namespace packcover {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kSimple:
      return "simple";
    case Variant::kFast:
      return "fast";
    case Variant::kSlow:
      return "slow";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "simple") return Variant::kSimple;
  if (name == "fast") return Variant::kFast;
  if (name == "slow") return Variant::kSlow;
  throw PreconditionError("unknown variant '" + std::string(name) + "'");
}

int guarantee_multiplier(Variant v) {
  switch (v) {
    case Variant::kSimple:
      return 6;
    case Variant::kFast:
      return 7;
    case Variant::kSlow:
      return 2;
  }
  return 7;
}

std::uint64_t iteration_budget(std::size_t rows, std::size_t cols, double eps) {
  const double rc = static_cast<double>(rows) * static_cast<double>(cols);
  const double n = std::ceil(2.0 * std::log(rc) / (eps * eps));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= kMaxEpsilon)) {
    throw PreconditionError("eps must lie in (0, 1/7], got " +
                            std::to_string(eps));
  }
}

void check_columns(const CooMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw InvalidInstance("matrix must have at least one row and column");
  }
  const auto counts = m.column_counts();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) {
      throw EmptyColumnError("column " + std::to_string(j) + " is empty");
    }
  }
}

}  // namespace

std::pair<Index, Index> random_pair(const SamplableVector& p,
                                    const SamplableVector& phat,
                                    const SamplableVector& p_times_uhat,
                                    const SamplableVector& phat_times_u,
                                    Rng& rng) {
  if (phat.live_count() == 0) {
    throw InternalError("random_pair: no active column");
  }
  const WideReal first = p_times_uhat.total() * phat.total();
  const WideReal second = p.total() * phat_times_u.total();
  const WideReal sum = first + second;
  if (sum.is_zero()) throw InternalError("random_pair: all pair weights zero");
  const double prob_first = ratio(first, sum);
  if (rng.uniform() < prob_first) {
    const Index i = p_times_uhat.sample(rng);
    const Index j = phat.sample(rng);
    return {i, j};
  }
  const Index i = p.sample(rng);
  const Index j = phat_times_u.sample(rng);
  return {i, j};
}

Solver::Solver(std::shared_ptr<const CooMatrix> normalized,
               const SolveOptions& options)
    : original_(std::move(normalized)), options_(options), rng_(options.seed) {
  if (!original_) throw PreconditionError("Solver: null matrix");
  check_eps(options_.eps);
  if (options_.variant == Variant::kSlow) {
    throw PreconditionError("Solver runs the simple or fast variant; use solve_slow");
  }
  check_columns(*original_);
  const std::size_t r = original_->rows();
  const std::size_t c = original_->cols();
  budget_ = iteration_budget(r, c, options_.eps);
  up_factor_ = 1.0 + options_.eps;
  down_factor_ = 1.0 - options_.eps;

  if (options_.variant == Variant::kFast) {
    working_ = LinkedMatrix(truncate(*original_, options_.eps));
    working_.pseudo_sort_lists();
  } else {
    working_ = LinkedMatrix(*original_);
    working_.sort_lists();
  }

  x_.assign(c, 0.0);
  xhat_.assign(r, 0.0);
  y_.assign(r, 0);
  yhat_.assign(c, 0);
  u_.resize(c);
  uhat_.resize(r);
  for (Index j = 0; j < c; ++j) u_[j] = working_.column_max(j);
  for (Index i = 0; i < r; ++i) uhat_[i] = working_.row_max(i);
  active_.assign(c, 1);
  active_count_ = c;

  const std::vector<double> ones_r(r, 1.0), ones_c(c, 1.0);
  p_ = SamplableVector(ones_r);
  phat_ = SamplableVector(ones_c);
  p_uhat_ = SamplableVector(uhat_);
  phat_u_ = SamplableVector(u_);
}

bool Solver::done() const {
  return max_y_ >= budget_ || active_count_ == 0 ||
         active_at_budget_ == active_count_;
}

void Solver::reseed(std::uint64_t seed, std::uint64_t stream) {
  rng_ = Rng(seed, stream);
}

void Solver::collect_rows(IterationTrace& t) {
  const double delta = t.delta;
  const double z = t.z;
  const bool fast = options_.variant == Variant::kFast;
  const double stop = fast ? 0.5 * z : z;
  for (const auto& cell : working_.column(t.col)) {
    ++t.traversed_rows;
    const double increase = cell.value * delta;
    if (increase < stop) break;
    if (increase >= z) t.incremented_rows.push_back(cell.row);
  }
}

void Solver::collect_cols(IterationTrace& t) {
  const double delta = t.delta;
  const double z = t.z;
  const bool fast = options_.variant == Variant::kFast;
  const double stop = fast ? 0.5 * z : z;
  for (const auto& cell : working_.row(t.row)) {
    ++t.traversed_cols;
    const double increase = cell.value * delta;
    if (increase < stop) break;
    if (increase >= z) t.incremented_cols.push_back(cell.col);
  }
}

void Solver::check_step(IterationTrace& t) const {
  double max_row = 0.0;
  for (const auto& cell : working_.column(t.col)) {
    max_row = std::max(max_row, cell.value * t.delta);
  }
  double max_col = 0.0;
  for (const auto& cell : working_.row(t.row)) {
    max_col = std::max(max_col, cell.value * t.delta);
  }
  constexpr double kSlack = 1e-12;
  if (max_row > 1.0 + kSlack || max_col > 1.0 + kSlack ||
      std::max(max_row, max_col) < 0.25 - kSlack) {
    throw InternalError("largest left-hand-side increase " +
                        std::to_string(std::max(max_row, max_col)) +
                        " outside [1/4, 1]");
  }
  if (x_sum_ != xhat_sum_) {
    throw InternalError("primal and dual sums diverged");
  }
  t.max_row_increase = max_row;
  t.max_col_increase = max_col;
}

const IterationTrace& Solver::step() {
  if (done()) throw PreconditionError("step: solver already terminated");
  IterationTrace& t = trace_;
  t.incremented_rows.clear();
  t.incremented_cols.clear();
  t.retired_cols.clear();
  t.traversed_rows = t.traversed_cols = 0;
  t.max_row_increase = t.max_col_increase =
      std::numeric_limits<double>::quiet_NaN();

  const auto [row, col] = random_pair(p_, phat_, p_uhat_, phat_u_, rng_);
  t.row = row;
  t.col = col;
  t.delta = 1.0 / (uhat_[row] + u_[col]);
  x_[col] += t.delta;
  xhat_[row] += t.delta;
  x_sum_ += t.delta;
  xhat_sum_ += t.delta;
  t.z = rng_.uniform();

  collect_rows(t);
  collect_cols(t);
  if (options_.check_invariants) check_step(t);

  for (const Index i : t.incremented_rows) {
    max_y_ = std::max(max_y_, ++y_[i]);
    p_.scale_entry(i, up_factor_);
    ++counters_.sampler_updates;
    if (p_uhat_.is_live(i)) {
      p_uhat_.scale_entry(i, up_factor_);
      ++counters_.sampler_updates;
    }
  }
  for (const Index j : t.incremented_cols) {
    const std::uint64_t v = ++yhat_[j];
    phat_.scale_entry(j, down_factor_);
    phat_u_.scale_entry(j, down_factor_);
    counters_.sampler_updates += 2;
    if (v == budget_) {
      ++active_at_budget_;
    } else if (v == budget_ + 1) {
      --active_at_budget_;
      t.retired_cols.push_back(j);
    }
  }
  for (const Index j : t.retired_cols) retire(j);

  ++counters_.iterations;
  if (t.empty()) ++counters_.empty_iterations;
  counters_.increments += t.incremented_rows.size() + t.incremented_cols.size();
  counters_.traversed += t.traversed_rows + t.traversed_cols;
  return t;
}

void Solver::retire(Index j) {
  active_[j] = 0;
  --active_count_;
  phat_.set_zero(j);
  phat_u_.set_zero(j);
  counters_.sampler_updates += 2;
  ++counters_.retired_columns;

  const std::size_t before = working_.live_nnz();
  const auto head_rows = working_.delete_column(j);
  counters_.deletions += before - working_.live_nnz();

  const bool fast = options_.variant == Variant::kFast;
  for (const Index i : head_rows) {
    const double head = working_.row_head_value(i);
    const double bound = fast ? 2.0 * head : head;
    if (bound == 0.0) {
      if (p_uhat_.is_live(i)) {
        p_uhat_.set_zero(i);
        ++counters_.sampler_updates;
      }
    } else if (bound != uhat_[i]) {
      p_uhat_.scale_entry(i, bound / uhat_[i]);
      ++counters_.sampler_updates;
    }
    uhat_[i] = bound;
  }
}

std::uint64_t Solver::run() {
  std::uint64_t n = 0;
  while (!done()) {
    step();
    ++n;
  }
  return n;
}

SolutionPair Solver::finalize() const {
  SolutionPair pair = scale_pair(*original_, x_, xhat_);
  pair.variant = options_.variant;
  pair.eps = options_.eps;
  pair.budget = budget_;
  pair.counters = counters_;
  return pair;
}

SolutionPair scale_pair(const CooMatrix& m, std::span<const double> x,
                        std::span<const double> xhat) {
  const Products prod = exact_products(m, x, xhat);
  const double max_load = *std::max_element(prod.mx.begin(), prod.mx.end());
  const double min_load = *std::min_element(prod.mtxh.begin(), prod.mtxh.end());
  if (!(max_load > 0.0) || !(min_load > 0.0)) {
    throw InternalError("final scaling: max_i M_i x = " +
                        std::to_string(max_load) + ", min_j M_j^T xhat = " +
                        std::to_string(min_load));
  }
  SolutionPair pair;
  pair.max_row_load = max_load;
  pair.min_column_load = min_load;
  pair.primal.resize(x.size());
  pair.dual.resize(xhat.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    pair.primal[j] = x[j] / max_load;
    pair.primal_value += pair.primal[j];
  }
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    pair.dual[i] = xhat[i] / min_load;
    pair.dual_value += pair.dual[i];
  }
  pair.ratio = pair.primal_value / pair.dual_value;
  return pair;
}

namespace {

struct SlowRun {
  std::vector<double> x, xhat;
  OpCounters counters;
  std::uint64_t budget = 0;
};

SlowRun run_slow(const CooMatrix& m, double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionError("solve_slow: eps must lie in (0, 1)");
  }
  check_columns(m);
  if (m.max_value() > 1.0) {
    throw PreconditionError("solve_slow: entries must lie in [0, 1]");
  }
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  const LinkedMatrix lists(m);
  SlowRun run;
  run.budget = iteration_budget(r, c, eps);
  run.x.assign(c, 0.0);
  run.xhat.assign(r, 0.0);
  std::vector<double> row_load(r, 0.0), col_load(c, 0.0);
  const double log_up = std::log2(1.0 + eps);
  const double log_down = std::log2(1.0 - eps);
  SamplableVector p(std::vector<double>(r, 1.0));
  SamplableVector phat(std::vector<double>(c, 1.0));
  Rng rng(seed);
  const auto budget = static_cast<double>(run.budget);
  double max_load = 0.0;
  // Draw order per iteration: column from phat, then row from p.
  while (max_load < budget) {
    const Index jp = phat.sample(rng);
    const Index ip = p.sample(rng);
    run.x[jp] += 1.0;
    run.xhat[ip] += 1.0;
    for (const auto& cell : lists.column(jp)) {
      row_load[cell.row] += cell.value;
      max_load = std::max(max_load, row_load[cell.row]);
      p.assign(cell.row, WideReal::exp2(row_load[cell.row] * log_up));
      ++run.counters.sampler_updates;
      ++run.counters.increments;
    }
    for (const auto& cell : lists.row(ip)) {
      col_load[cell.col] += cell.value;
      phat.assign(cell.col, WideReal::exp2(col_load[cell.col] * log_down));
      ++run.counters.sampler_updates;
      ++run.counters.increments;
    }
    ++run.counters.iterations;
  }
  return run;
}

}  // namespace

SolutionPair solve_slow(const CooMatrix& m, double eps, std::uint64_t seed) {
  SlowRun run = run_slow(m, eps, seed);
  SolutionPair pair = scale_pair(m, run.x, run.xhat);
  pair.variant = Variant::kSlow;
  pair.eps = eps;
  pair.budget = run.budget;
  pair.counters = run.counters;
  return pair;
}

SolutionPair solve(std::shared_ptr<const CooMatrix> normalized,
                   const SolveOptions& options) {
  if (!normalized) throw PreconditionError("solve: null matrix");
  if (options.variant != Variant::kSlow) {
    Solver solver(std::move(normalized), options);
    solver.run();
    return solver.finalize();
  }
  check_eps(options.eps);
  check_columns(*normalized);
  const double top = normalized->max_value();
  SlowRun run;
  if (top > 1.0) {
    std::vector<Triplet> scaled(normalized->entries().begin(),
                                normalized->entries().end());
    for (Triplet& t : scaled) t.value /= top;
    run = run_slow(CooMatrix(normalized->rows(), normalized->cols(),
                             std::move(scaled)),
                   options.eps, options.seed);
  } else {
    run = run_slow(*normalized, options.eps, options.seed);
  }
  SolutionPair pair = scale_pair(*normalized, run.x, run.xhat);
  pair.variant = Variant::kSlow;
  pair.eps = options.eps;
  pair.budget = run.budget;
  pair.counters = run.counters;
  return pair;
}

SolutionPair solve(const CooMatrix& normalized, const SolveOptions& options) {
  return solve(std::make_shared<const CooMatrix>(normalized), options);
}

GeneralSolution to_general(const NormalizationRecord& record,
                           const SolutionPair& pair) {
  if (pair.primal.size() != record.objective.size() ||
      pair.dual.size() != record.kept_rows.size()) {
    throw InvalidInstance("to_general: solution does not match the record");
  }
  GeneralSolution out;
  out.primal.resize(pair.primal.size());
  for (std::size_t j = 0; j < pair.primal.size(); ++j) {
    out.primal[j] = pair.primal[j] / record.objective[j];
    out.primal_value += record.objective[j] * out.primal[j];
  }
  out.dual.assign(record.original_rows, 0.0);
  for (std::size_t k = 0; k < record.kept_rows.size(); ++k) {
    const Index i = record.kept_rows[k];
    out.dual[i] = pair.dual[k] / record.capacities[i];
    out.dual_value += record.capacities[i] * out.dual[i];
  }
  return out;
}

}  // namespace packcover
