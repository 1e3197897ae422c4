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

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "packcover/rng.hpp"
#include "packcover/sampler.hpp"

namespace packcover {
namespace {

std::vector<double> spread_weights(std::size_t n) {
  Rng rng(1);
  std::vector<double> w(n);
  for (double& v : w) v = std::exp2(-20.0 * rng.uniform());
  return w;
}

// Multiplicative updates by 1 + eps, the solver's dominant operation.
void BM_ScaleEntry(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SamplableVector v(spread_weights(n));
  Rng rng(2);
  for (auto _ : state) {
    v.scale_entry(static_cast<Index>(rng.below(n)), 1.05);
    if (v.total().exponent() > 900) v.renormalize(512);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ScaleEntry)->Arg(64)->Arg(1024)->Arg(65536);

void BM_Sample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SamplableVector v(spread_weights(n));
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(v.sample(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Sample)->Arg(64)->Arg(1024)->Arg(65536);

void BM_Total(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SamplableVector v(spread_weights(n));
  for (auto _ : state) {
    v.scale_entry(0, 1.0);  // marks the cached total stale
    benchmark::DoNotOptimize(v.total());
  }
}
BENCHMARK(BM_Total)->Arg(64)->Arg(65536);

}  // namespace
}  // namespace packcover
