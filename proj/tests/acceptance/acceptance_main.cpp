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

// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exit status is
// nonzero iff any selected criterion fails. Arguments select a subset of
// criteria by number; none runs all ten.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "packcover/errors.hpp"
#include "packcover/model.hpp"
#include "packcover/oracle.hpp"
#include "packcover/rng.hpp"
#include "packcover/sampler.hpp"
#include "packcover/solver.hpp"
#include "packcover/verify.hpp"

namespace packcover {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Matrix = std::shared_ptr<const CooMatrix>;

Matrix random_instance(std::size_t r, std::size_t c, double d, std::uint64_t seed) {
  return std::make_shared<const CooMatrix>(
      normalize(generate_random(r, c, d, seed)).matrix);
}

Matrix hand_instance() {
  return std::make_shared<const CooMatrix>(
      CooMatrix(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 1}}));
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// Shared tallies for the criteria that quantify over every run.
struct Ledger {
  std::uint64_t runs = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t invariant_failures = 0;
  std::uint64_t counter_failures = 0;
  double worst_increment_fraction = 0.0;
  std::uint64_t oracle_solves = 0;
  double worst_duality_gap = 0.0;
  std::vector<std::string> notes;

  void record_counters(const SolutionPair& s, std::size_t rows, std::size_t cols) {
    const double bound = static_cast<double>(rows + cols) * static_cast<double>(s.budget);
    const double frac = static_cast<double>(s.counters.increments) / bound;
    worst_increment_fraction = std::max(worst_increment_fraction, frac);
    if (frac > 1.0) ++counter_failures;
  }

  // Strong duality and two-sided feasibility of an exact oracle answer.
  void record_oracle(const CooMatrix& m, const OracleResult& r) {
    ++oracle_solves;
    if (r.status != OracleStatus::kOptimal) {
      worst_duality_gap = INFINITY;
      return;
    }
    double dual = 0.0;
    for (const double y : r.dual) dual += y;
    double gap = std::fabs(r.value - dual);
    const Products p = exact_products(m, r.primal, r.dual);
    for (const double v : p.mx) gap = std::max(gap, v - 1.0);
    for (const double v : p.mtxh) gap = std::max(gap, 1.0 - v);
    worst_duality_gap = std::max(worst_duality_gap, gap);
  }
};

Ledger ledger;

SolutionPair checked_solve(const Matrix& m, double eps, Variant v, std::uint64_t seed) {
  SolveOptions o;
  o.eps = eps;
  o.variant = v;
  o.seed = seed;
  o.check_invariants = true;
  ++ledger.runs;
  try {
    SolutionPair s = solve(m, o);
    ledger.record_counters(s, m->rows(), m->cols());
    return s;
  } catch (const InternalError& e) {
    ++ledger.invariant_failures;
    ledger.notes.push_back(e.what());
    return {};
  }
}

// 1 and 2: ratio target and oracle value on 21 instances, 50 seeds per
// (instance, eps, variant) group; every run is checked for feasibility and
// the per-iteration invariants.
Outcome criterion_approximation() {
  std::vector<Matrix> instances{hand_instance()};
  for (std::uint64_t k = 0; k < 20; ++k) {
    instances.push_back(random_instance(100, 100, 0.25, 1000 + k));
  }
  constexpr int kSeeds = 50;
  double worst_ratio_rate = 1.0;
  double worst_oracle_rate = 1.0;
  std::string worst_group;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const Matrix& m = instances[k];
    const OracleResult opt = solve_exact(*m);
    ledger.record_oracle(*m, opt);
    for (const double eps : {0.1, 0.05}) {
      for (const Variant v : {Variant::kSimple, Variant::kFast}) {
        const double target = 1.0 - guarantee_multiplier(v) * eps;
        int ratio_hits = 0;
        int oracle_hits = 0;
        for (int s = 0; s < kSeeds; ++s) {
          const SolutionPair pair = checked_solve(m, eps, v, 100 * k + s);
          if (pair.primal.empty()) continue;
          const Certificate c = certify(*m, pair, opt.value);
          if (c.max_violation > kFeasibilityTolerance ||
              c.min_slack < -kFeasibilityTolerance) {
            ++ledger.infeasible;
          }
          ratio_hits += c.ratio >= target ? 1 : 0;
          oracle_hits += pair.primal_value >= (1.0 - 7.0 * eps) * opt.value ? 1 : 0;
        }
        const double rr = static_cast<double>(ratio_hits) / kSeeds;
        const double orr = static_cast<double>(oracle_hits) / kSeeds;
        if (worst_group.empty() ||
            std::min(rr, orr) < std::min(worst_ratio_rate, worst_oracle_rate)) {
          worst_group = "instance " + std::to_string(k) + " eps " +
                        fmt("%g", eps) + " " + std::string(to_string(v));
        }
        worst_ratio_rate = std::min(worst_ratio_rate, rr);
        worst_oracle_rate = std::min(worst_oracle_rate, orr);
      }
    }
  }
  Outcome o;
  o.pass = worst_ratio_rate >= 0.95 && worst_oracle_rate >= 0.95;
  o.detail = fmt("worst group ratio-target rate %.2f, oracle rate %.2f", worst_ratio_rate,
                 worst_oracle_rate) +
             " (" + worst_group + "), " + std::to_string(ledger.runs) + " runs";
  return o;
}

Outcome criterion_feasibility() {
  Outcome o;
  o.pass = ledger.runs > 0 && ledger.infeasible == 0 && ledger.invariant_failures == 0;
  o.detail = std::to_string(ledger.runs) + " runs, " +
             std::to_string(ledger.infeasible) + " infeasible, " +
             std::to_string(ledger.invariant_failures) + " invariant failures";
  if (!ledger.notes.empty()) o.detail += "; first: " + ledger.notes.front();
  if (ledger.runs == 0) o.detail = "needs criterion 1 in the same invocation";
  return o;
}

Outcome criterion_counters() {
  Outcome o;
  o.pass = ledger.runs > 0 && ledger.counter_failures == 0;
  o.detail = std::to_string(ledger.runs) + " runs, " +
             std::to_string(ledger.counter_failures) + " over (r+c)N" +
             fmt(", largest increments/(r+c)N %.3f", ledger.worst_increment_fraction);
  if (ledger.runs == 0) o.detail = "needs another criterion's runs first";
  return o;
}

Outcome criterion_empty_rate() {
  const Matrix m = random_instance(200, 200, 0.125, 4);
  Outcome o;
  for (const Variant v : {Variant::kSimple, Variant::kFast}) {
    const SolutionPair s = checked_solve(m, 0.05, v, 4);
    const StatReport r = audit_counters(s.counters, m->rows(), m->cols(), s.budget);
    const PropertyCheck* c = r.find("empty_rate");
    o.pass = o.pass && c->pass;
    o.detail += std::string(to_string(v)) +
                fmt(" empty fraction %.4f <= %.4f; ", c->statistic, c->threshold);
  }
  return o;
}

Solver frozen_after(const Matrix& m, Variant v, std::uint64_t steps, std::uint64_t seed) {
  SolveOptions o;
  o.eps = 0.1;
  o.variant = v;
  o.seed = seed;
  Solver s(m, o);
  for (std::uint64_t k = 0; k < steps && !s.done(); ++k) s.step();
  return s;
}

Outcome criterion_drift() {
  const Matrix m = random_instance(50, 50, 0.25, 5);
  SolveOptions opts;
  opts.eps = 0.1;
  opts.seed = 5;
  Solver probe(m, opts);
  const std::uint64_t total = probe.run();
  Outcome o;
  double worst = -INFINITY;
  for (std::uint64_t k = 1; k <= 5; ++k) {
    const Solver frozen = frozen_after(m, Variant::kFast, total * k / 6, 5);
    const PropertyCheck c = drift_test(frozen, 10000, 50 + k);
    o.pass = o.pass && c.pass;
    worst = std::max(worst, c.statistic);
  }
  o.detail = fmt("5 states of a %g-iteration run, largest mean/stderr %.2f <= 3",
                 static_cast<double>(total), worst);
  return o;
}

// 20x20 pattern with values spread over four binary orders, so that the
// fast variant's pseudo-sorted traversal differs from the simple one.
Matrix weighted_instance(std::uint64_t seed) {
  const CooMatrix pattern = normalize(generate_random(20, 20, 0.25, seed)).matrix;
  Rng rng(seed, 1);
  std::vector<Triplet> cells(pattern.entries().begin(), pattern.entries().end());
  for (Triplet& t : cells) t.value = std::exp2(-4.0 * rng.uniform());
  return std::make_shared<const CooMatrix>(CooMatrix(20, 20, std::move(cells)));
}

Outcome criterion_tracking() {
  const Matrix m = weighted_instance(6);
  Outcome o;
  for (const Variant v : {Variant::kSimple, Variant::kFast}) {
    SolveOptions opts;
    opts.eps = 0.1;
    opts.variant = v;
    opts.seed = 6;
    Solver probe(m, opts);
    const std::uint64_t total = probe.run();
    for (const std::uint64_t k : {1, 2}) {
      const Solver frozen = frozen_after(m, v, total * k / 3, 6);
      const PropertyCheck c = tracking_test(frozen, 10000, 60 + k);
      o.pass = o.pass && c.pass;
      o.detail += std::string(to_string(v)) +
                  fmt(" at %.0f%%: max |z| %.2f <= %.2f; ", 100.0 * k / 3,
                      c.statistic, c.threshold);
    }
  }
  return o;
}

Outcome criterion_random_pair() {
  // Weights (0,0) = 1 * (1 + 2) = 3 and (1,0) = 1 * (3 + 2) = 5.
  const SamplableVector p(std::vector<double>{1, 1});
  const SamplableVector phat(std::vector<double>{1});
  const SamplableVector p_uhat(std::vector<double>{1, 3});
  const SamplableVector phat_u(std::vector<double>{2});
  Rng rng(7);
  constexpr int kDraws = 100000;
  int hits = 0;
  for (int k = 0; k < kDraws; ++k) hits += random_pair(p, phat, p_uhat, phat_u, rng).first == 0;
  const double sd = std::sqrt(kDraws * 3.0 / 8.0 * 5.0 / 8.0);
  const double z = std::fabs(hits - kDraws * 3.0 / 8.0) / sd;
  return {z <= 4.0, fmt("P(0,0) %.5f vs 0.375, |z| %.2f <= 4", hits / double(kDraws), z)};
}

// Chi-square statistic pooling cells with expected count below 5; zero-weight
// cells must never be drawn. Returns the statistic and its critical value at
// 1e-3 from the Wilson-Hilferty approximation.
std::pair<double, double> chi_square(const std::vector<std::uint64_t>& counts,
                                     const std::vector<double>& weights,
                                     std::uint64_t draws, bool& zero_drawn) {
  double total = 0.0;
  for (const double w : weights) total += w;
  double stat = 0.0;
  double pooled_e = 0.0;
  double pooled_o = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) {
      zero_drawn = zero_drawn || counts[i] != 0;
      continue;
    }
    const double e = static_cast<double>(draws) * weights[i] / total;
    if (e < 5.0) {
      pooled_e += e;
      pooled_o += static_cast<double>(counts[i]);
      continue;
    }
    stat += (counts[i] - e) * (counts[i] - e) / e;
    ++cells;
  }
  if (pooled_e > 0.0) {
    stat += (pooled_o - pooled_e) * (pooled_o - pooled_e) / pooled_e;
    ++cells;
  }
  const double k = cells - 1;
  const double z = normal_two_sided_quantile(2e-3);
  const double h = 2.0 / (9.0 * k);
  return {stat, k * std::pow(1.0 - h + z * std::sqrt(h), 3)};
}

Outcome criterion_sampler() {
  constexpr std::uint64_t kDraws = 1000000;
  Rng rng(8);
  std::vector<std::vector<double>> vectors(3, std::vector<double>(64));
  for (int i = 0; i < 64; ++i) {
    vectors[0][i] = i + 1.0;
    vectors[1][i] = std::ldexp(1.0, -i / 4);
    vectors[2][i] = std::ldexp(0.5 + rng.uniform(), static_cast<int>(rng.below(9)) - 4);
  }
  Outcome o;
  bool zero_drawn = false;
  double worst_ratio_error = 0.0;
  auto test = [&](const SamplableVector& sv, const std::vector<double>& w,
                  const char* label) {
    std::vector<std::uint64_t> counts(w.size(), 0);
    for (std::uint64_t k = 0; k < kDraws; ++k) ++counts[sv.sample(rng)];
    const auto [stat, crit] = chi_square(counts, w, kDraws, zero_drawn);
    o.pass = o.pass && stat <= crit;
    o.detail += label + fmt(" %.1f<=%.1f; ", stat, crit);
  };
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    std::vector<double> w = vectors[v];
    SamplableVector sv(w);
    test(sv, w, ("fixed" + std::to_string(v)).c_str());

    // 1e5 interleaved scale and zero updates with forced renormalizations;
    // w tracks the expected weights up to a common factor.
    for (int u = 0; u < 100000; ++u) {
      const Index i = static_cast<Index>(rng.below(64));
      if (u % 10000 == 9999) sv.renormalize(u % 20000 == 9999 ? 512 : -300);
      if (w[i] == 0.0) {
        w[i] = 0.5 + rng.uniform();
        sv.assign(i, WideReal::from_double(w[i]).shifted(-sv.scale_exponent()));
      } else if (rng.below(50) == 0 && std::count(w.begin(), w.end(), 0.0) < 32) {
        w[i] = 0.0;
        sv.set_zero(i);
      } else {
        double f = 0.8 + 0.45 * rng.uniform();
        if ((w[i] > 1024.0 && f > 1.0) || (w[i] < 1.0 / 1024 && f < 1.0)) f = 1.0 / f;
        w[i] *= f;
        sv.scale_entry(i, f);
      }
    }
    test(sv, w, ("updated" + std::to_string(v)).c_str());
    Index ref = 0;
    while (w[ref] == 0.0) ++ref;
    for (Index i = 0; i < 64; ++i) {
      const double got = (sv.weight(i) / sv.weight(ref)).to_double();
      const double want = w[i] / w[ref];
      if (want == 0.0) {
        if (got != 0.0) worst_ratio_error = INFINITY;
        continue;
      }
      worst_ratio_error = std::max(worst_ratio_error, std::fabs(got / want - 1.0));
    }
  }
  o.pass = o.pass && !zero_drawn && worst_ratio_error <= 1e-9;
  o.detail += fmt("ratio error %.2e <= 1e-9", worst_ratio_error);
  if (zero_drawn) o.detail += "; a zeroed entry was drawn";
  return o;
}

Outcome criterion_scaling() {
  std::vector<double> ratios;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix m = random_instance(500, 500, 0.25, 900 + seed);
    const SolutionPair fine = checked_solve(m, 0.05, Variant::kFast, seed);
    const SolutionPair coarse = checked_solve(m, 0.1, Variant::kFast, seed);
    ratios.push_back(static_cast<double>(fine.counters.increments) /
                     static_cast<double>(coarse.counters.increments));
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = 0.5 * (ratios[4] + ratios[5]);
  return {median >= 3.0 && median <= 5.0,
          fmt("median increment ratio %.3f in [3, 5] (range %.3f..%.3f)", median,
              ratios.front(), ratios.back())};
}

Outcome criterion_oracle() {
  Rng rng(10);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t r = 1 + rng.below(4);
    const std::size_t c = 1 + rng.below(3);
    DenseMatrix d(r, c);
    for (double& v : d.data) v = rng.uniform() < 0.7 ? 0.25 + 0.75 * rng.uniform() : 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      d(rng.below(r), j) = 0.25 + 0.75 * rng.uniform();
    }
    std::vector<Triplet> cells;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        if (d(i, j) > 0.0) {
          cells.push_back({static_cast<Index>(i), static_cast<Index>(j), d(i, j)});
        }
      }
    }
    const OracleResult exact = solve_exact(d);
    ledger.record_oracle(CooMatrix(r, c, cells), exact);
    worst = std::max(worst, std::fabs(exact.value - brute_force_tiny(d)));
  }
  Outcome o;
  o.pass = worst <= 3e-3 && ledger.worst_duality_gap <= 1e-7;
  o.detail = fmt("largest |simplex - grid| %.2e <= 3e-3; ", worst) +
             std::to_string(ledger.oracle_solves) + " oracle solves" +
             fmt(", largest duality or feasibility gap %.2e <= 1e-7",
                 ledger.worst_duality_gap);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace packcover

int main(int argc, char** argv) {
  using namespace packcover;
  // Criteria 2 and 3 summarize runs made by the others, so they print last.
  const std::vector<Criterion> criteria{
      {1, "approximation guarantee", criterion_approximation},
      {4, "empty-iteration rate", criterion_empty_rate},
      {5, "potential drift", criterion_drift},
      {6, "unbiased tracking", criterion_tracking},
      {7, "random_pair distribution", criterion_random_pair},
      {8, "sampler distribution and ratios", criterion_sampler},
      {9, "increment scaling in eps", criterion_scaling},
      {10, "oracle self-consistency", criterion_oracle},
      {2, "deterministic feasibility", criterion_feasibility},
      {3, "increment counter bound", criterion_counters},
  };
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));
  bool all = true;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
