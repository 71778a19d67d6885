/*
 * Copyright 2026 The aop Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "aop/baselines.hpp"
#include "aop/bounds.hpp"
#include "aop/harness.hpp"
#include "aop/huffman.hpp"
#include "aop/optimizer.hpp"

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr std::size_t kPool = 16;

std::vector<aop::AopInstance> pool(std::size_t m) {
  std::vector<aop::AopInstance> out;
  for (std::size_t i = 0; i < kPool; ++i) out.push_back(aop::generate_instance(kSeed, m, i));
  return out;
}

template <aop::Mode M>
void BM_Optimize(benchmark::State& state) {
  const auto instances = pool(static_cast<std::size_t>(state.range(0)));
  std::size_t n = 0;
  for (auto _ : state) {
    auto r = aop::optimize(instances[n++ % kPool], M);
    benchmark::DoNotOptimize(r.delay);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Optimize<aop::Mode::Delay>)->DenseRange(4, 28, 4)->Unit(benchmark::kMicrosecond)->Complexity();
BENCHMARK(BM_Optimize<aop::Mode::DelaySize>)->DenseRange(4, 28, 4)->Unit(benchmark::kMicrosecond);

void BM_Baseline(benchmark::State& state) {
  const auto family = static_cast<aop::BaselineFamily>(state.range(0));
  const auto instances = pool(static_cast<std::size_t>(state.range(1)));
  std::size_t n = 0;
  for (auto _ : state) {
    auto r = aop::optimize_baseline(instances[n++ % kPool], family);
    benchmark::DoNotOptimize(r.delay);
  }
  state.SetLabel(aop::to_string(family));
}
BENCHMARK(BM_Baseline)
    ->ArgsProduct({{0, 1, 2}, {8, 16, 28}})
    ->Unit(benchmark::kMicrosecond);

void BM_LowerBound(benchmark::State& state) {
  const auto instances = pool(static_cast<std::size_t>(state.range(0)));
  std::size_t n = 0;
  for (auto _ : state) {
    auto lb = aop::lower_bound(instances[n++ % kPool]);
    benchmark::DoNotOptimize(lb);
  }
}
BENCHMARK(BM_LowerBound)->Arg(28);

void BM_HuffmanDelay(benchmark::State& state) {
  std::vector<double> arrivals;
  aop::SplitMix64 rng{kSeed};
  for (std::int64_t i = 0; i < state.range(0); ++i) arrivals.push_back(static_cast<double>(rng.below(32)));
  for (auto _ : state) benchmark::DoNotOptimize(aop::huffman_delay(arrivals));
}
BENCHMARK(BM_HuffmanDelay)->RangeMultiplier(4)->Range(4, 1024);

}  // namespace

BENCHMARK_MAIN();
