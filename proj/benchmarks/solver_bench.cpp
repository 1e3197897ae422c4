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

#include <memory>

#include <benchmark/benchmark.h>

#include "packcover/model.hpp"
#include "packcover/solver.hpp"

namespace packcover {
namespace {

std::shared_ptr<const CooMatrix> instance(std::size_t n, double density) {
  return std::make_shared<const CooMatrix>(
      normalize(generate_random(n, n, density, 7)).matrix);
}

// Whole solves; counters report the work the cost model predicts.
void BM_Solve(benchmark::State& state, Variant variant) {
  const auto m = instance(static_cast<std::size_t>(state.range(0)), 0.25);
  SolveOptions o;
  o.eps = 0.1;
  o.variant = variant;
  std::uint64_t increments = 0;
  for (auto _ : state) {
    const SolutionPair s = solve(m, o);
    increments += s.counters.increments;
    ++o.seed;
  }
  state.counters["increments/s"] =
      benchmark::Counter(static_cast<double>(increments), benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(BM_Solve, simple, Variant::kSimple)->Arg(100)->Arg(300)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, fast, Variant::kFast)->Arg(100)->Arg(300)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, slow, Variant::kSlow)->Arg(100)
    ->Unit(benchmark::kMillisecond);

// Single steps from a fresh state, restarted whenever the run ends.
void BM_Step(benchmark::State& state) {
  const auto m = instance(static_cast<std::size_t>(state.range(0)), 0.25);
  SolveOptions o;
  o.eps = 0.05;
  auto solver = std::make_unique<Solver>(m, o);
  for (auto _ : state) {
    if (solver->done()) {
      state.PauseTiming();
      ++o.seed;
      solver = std::make_unique<Solver>(m, o);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(solver->step());
  }
}
BENCHMARK(BM_Step)->Arg(100)->Arg(1000);

}  // namespace
}  // namespace packcover
