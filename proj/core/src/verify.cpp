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

#include "packcover/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "packcover/errors.hpp"

namespace packcover {

namespace {

double target_for(double eps, Variant variant) {
  return 1.0 - guarantee_multiplier(variant) * eps;
}

void finish(Certificate& c, std::optional<double> oracle_value) {
  c.ratio = c.dual_value > 0.0 ? c.primal_value / c.dual_value : 0.0;
  if (oracle_value) {
    c.oracle_value = oracle_value;
    c.oracle_gap = *oracle_value > 0.0 ? c.primal_value / *oracle_value : 0.0;
  }
  c.pass = c.max_violation <= kFeasibilityTolerance &&
           c.min_slack >= -kFeasibilityTolerance && c.ratio >= c.target;
  if (c.oracle_gap) c.pass = c.pass && *c.oracle_gap >= c.target;
}

// Mean and standard error of a sample given its sum and sum of squares.
struct Moments {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Moments moments(double sum, double sumsq, std::uint64_t n) {
  const auto dn = static_cast<double>(n);
  Moments m;
  m.mean = sum / dn;
  const double var = std::max(0.0, (sumsq - dn * m.mean * m.mean) / (dn - 1.0));
  m.stderr_ = std::sqrt(var / dn);
  return m;
}

void check_frozen(const Solver& frozen, std::uint64_t trials, const char* who) {
  if (trials < kMinMonteCarloTrials) {
    throw PreconditionError(std::string(who) + ": needs at least " +
                            std::to_string(kMinMonteCarloTrials) + " trials");
  }
  if (frozen.done() || frozen.active_count() == 0) {
    throw PreconditionError(std::string(who) +
                            ": frozen state has terminated");
  }
}

}  // namespace

Certificate certify(const CooMatrix& m, std::span<const double> primal,
                    std::span<const double> dual, double eps, Variant variant,
                    std::optional<double> oracle_value) {
  const Products prod = exact_products(m, primal, dual);
  Certificate c;
  c.max_violation = -std::numeric_limits<double>::infinity();
  for (const double v : prod.mx) c.max_violation = std::max(c.max_violation, v - 1.0);
  c.min_slack = std::numeric_limits<double>::infinity();
  for (const double v : prod.mtxh) c.min_slack = std::min(c.min_slack, v - 1.0);
  for (const double v : primal) {
    c.primal_value += v;
    if (v < 0.0) c.max_violation = std::max(c.max_violation, -v);
  }
  for (const double v : dual) {
    c.dual_value += v;
    if (v < 0.0) c.min_slack = std::min(c.min_slack, v);
  }
  c.target = target_for(eps, variant);
  finish(c, oracle_value);
  return c;
}

Certificate certify(const CooMatrix& m, const SolutionPair& pair,
                    std::optional<double> oracle_value) {
  return certify(m, pair.primal, pair.dual, pair.eps, pair.variant,
                 oracle_value);
}

Certificate certify(const GeneralInstance& inst, std::span<const double> primal,
                    std::span<const double> dual, double eps, Variant variant,
                    std::optional<double> oracle_value) {
  const CooMatrix& a = inst.matrix;
  if (inst.capacities.size() != a.rows() || inst.objective.size() != a.cols()) {
    throw InvalidInstance("certify: capacities or objective size mismatch");
  }
  const Products prod = exact_products(a, primal, dual);
  Certificate c;
  c.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < prod.mx.size(); ++i) {
    c.max_violation =
        std::max(c.max_violation, prod.mx[i] / inst.capacities[i] - 1.0);
    c.dual_value += inst.capacities[i] * dual[i];
    if (dual[i] < 0.0) c.min_slack = std::min(c.min_slack, dual[i]);
  }
  c.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < prod.mtxh.size(); ++j) {
    c.min_slack =
        std::min(c.min_slack, prod.mtxh[j] / inst.objective[j] - 1.0);
    c.primal_value += inst.objective[j] * primal[j];
    if (primal[j] < 0.0) c.max_violation = std::max(c.max_violation, -primal[j]);
  }
  for (const double v : dual) {
    if (v < 0.0) c.min_slack = std::min(c.min_slack, v);
  }
  c.target = target_for(eps, variant);
  finish(c, oracle_value);
  return c;
}

bool StatReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return c.pass; });
}

const PropertyCheck* StatReport::find(const std::string& name) const {
  for (const PropertyCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void StatReport::append(const StatReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

StatReport audit_counters(const OpCounters& counters, std::size_t rows,
                          std::size_t cols, std::uint64_t budget) {
  StatReport report;
  const double scale = static_cast<double>(rows + cols) * static_cast<double>(budget);

  PropertyCheck inc;
  inc.name = "increment_budget";
  inc.sample_size = counters.iterations;
  inc.statistic = static_cast<double>(counters.increments);
  inc.threshold = scale;
  inc.pass = inc.statistic <= inc.threshold;
  report.checks.push_back(inc);

  PropertyCheck empty;
  empty.name = "empty_rate";
  empty.sample_size = counters.iterations;
  if (counters.iterations > 0) {
    const auto t = static_cast<double>(counters.iterations);
    empty.statistic = static_cast<double>(counters.empty_iterations) / t;
    empty.threshold = 0.75 + 5.0 * std::sqrt(0.1875 / t);
  } else {
    empty.threshold = 1.0;
  }
  empty.pass = empty.statistic <= empty.threshold;
  report.checks.push_back(empty);

  PropertyCheck trav;
  trav.name = "traversal_overhead";
  trav.sample_size = counters.iterations;
  trav.statistic = static_cast<double>(counters.iterations + counters.traversed);
  trav.threshold = 32.0 * scale;
  trav.pass = trav.statistic <= trav.threshold;
  if (trav.statistic > 8.0 * scale) {
    trav.detail = "above 8 (r+c) N";
  }
  report.checks.push_back(trav);
  return report;
}

PropertyCheck drift_test(const Solver& frozen, std::uint64_t trials,
                         std::uint64_t seed) {
  check_frozen(frozen, trials, "drift_test");
  const WideReal before = frozen.potential();
  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Solver trial = frozen;
    trial.reseed(seed, t);
    trial.step();
    const double rel = ratio(trial.potential() - before, before);
    sum += rel;
    sumsq += rel * rel;
  }
  const Moments m = moments(sum, sumsq, trials);
  PropertyCheck c;
  c.name = "drift";
  c.sample_size = trials;
  c.threshold = 3.0;
  if (m.stderr_ > 0.0) {
    c.statistic = m.mean / m.stderr_;
    c.pass = c.statistic <= c.threshold;
  } else {
    c.statistic = m.mean > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    c.pass = m.mean <= 0.0;
  }
  std::ostringstream detail;
  detail << "mean relative change " << m.mean << ", standard error " << m.stderr_;
  c.detail = detail.str();
  return c;
}

PropertyCheck tracking_test(const Solver& frozen, std::uint64_t trials,
                            std::uint64_t seed) {
  check_frozen(frozen, trials, "tracking_test");
  const std::size_t r = frozen.rows();
  const std::size_t cols = frozen.cols();
  const LinkedMatrix& w = frozen.working_matrix();

  // Coordinates 0..r-1 are rows, r..r+c-1 columns; inactive columns skipped.
  std::vector<double> sum(r + cols, 0.0), sumsq(r + cols, 0.0), diff(r + cols);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Solver trial = frozen;
    trial.reseed(seed, t);
    const IterationTrace& tr = trial.step();
    std::fill(diff.begin(), diff.end(), 0.0);
    for (const auto& cell : w.column(tr.col)) diff[cell.row] -= cell.value * tr.delta;
    for (const auto& cell : w.row(tr.row)) diff[r + cell.col] -= cell.value * tr.delta;
    for (const Index i : tr.incremented_rows) diff[i] += 1.0;
    for (const Index j : tr.incremented_cols) diff[r + j] += 1.0;
    for (std::size_t k = 0; k < diff.size(); ++k) {
      sum[k] += diff[k];
      sumsq[k] += diff[k] * diff[k];
    }
  }

  std::size_t coords = 0;
  double worst = 0.0;
  std::string worst_name = "none";
  for (std::size_t k = 0; k < r + cols; ++k) {
    if (k >= r && !frozen.active(static_cast<Index>(k - r))) continue;
    ++coords;
    const Moments m = moments(sum[k], sumsq[k], trials);
    double z = 0.0;
    if (m.stderr_ > 0.0) {
      z = std::fabs(m.mean) / m.stderr_;
    } else if (std::fabs(m.mean) > 1e-12) {
      z = std::numeric_limits<double>::infinity();
    }
    if (z > worst) {
      worst = z;
      worst_name = k < r ? "row " + std::to_string(k)
                         : "column " + std::to_string(k - r);
    }
  }
  PropertyCheck c;
  c.name = "tracking";
  c.sample_size = trials;
  c.statistic = worst;
  c.threshold = std::max(4.0, normal_two_sided_quantile(
                                  1e-3 / static_cast<double>(coords)));
  c.pass = c.statistic <= c.threshold;
  c.detail = std::to_string(coords) + " coordinates, largest |z| at " + worst_name;
  return c;
}

PropertyCheck approx_success_rate(std::span<const double> ratios, double target,
                                  double required) {
  PropertyCheck c;
  c.name = "approx_success_rate";
  c.sample_size = ratios.size();
  const auto hits = std::count_if(ratios.begin(), ratios.end(),
                                  [&](double v) { return v >= target; });
  c.statistic = ratios.empty() ? 0.0
                               : static_cast<double>(hits) /
                                     static_cast<double>(ratios.size());
  c.threshold = required;
  c.pass = !ratios.empty() && c.statistic >= required;
  c.detail = std::to_string(hits) + " of " + std::to_string(ratios.size()) +
             " runs at or above " + std::to_string(target);
  return c;
}

double normal_two_sided_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError("normal_two_sided_quantile: alpha must lie in (0, 1)");
  }
  // erfc(z / sqrt 2) is decreasing in z; bisect.
  double lo = 0.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid / std::sqrt(2.0)) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace packcover
