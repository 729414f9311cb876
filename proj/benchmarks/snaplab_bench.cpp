// Copyright 2026 The snaplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "snaplab/cost/model.hpp"
#include "snaplab/guest/interpreter.hpp"
#include "snaplab/guest/page_content.hpp"
#include "snaplab/harness/artifacts.hpp"
#include "snaplab/restore/instance.hpp"
#include "snaplab/restore/plan.hpp"
#include "snaplab/throughput/throughput.hpp"

namespace {

using namespace snaplab;

const harness::FunctionArtifacts& lorem() {
  static const harness::FunctionArtifacts art = harness::prepare_function(
      guest::load_workload(SNAPLAB_SCENARIO_DIR "/corpus/lorem.json"), 1);
  return art;
}

void BM_RenderPage(benchmark::State& state) {
  std::vector<std::uint8_t> page(4096);
  std::uint64_t id = 0;
  for (auto _ : state) {
    guest::render_generated(7, 11, id++, page);
    benchmark::DoNotOptimize(page.data());
  }
  state.SetBytesProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_RenderPage);

void BM_PageDigest(benchmark::State& state) {
  std::uint64_t id = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(guest::page_digest(guest::PageContent::generated(11), 7, id++, 4096));
  }
  state.SetBytesProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_PageDigest);

void BM_PlanRestore(benchmark::State& state) {
  const auto& art = lorem();
  const auto strategy = restore::kAllStrategies[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(restore::plan_restore(strategy, art.spec, art.inputs()));
  }
  state.SetLabel(std::string(restore::strategy_name(strategy)));
}
BENCHMARK(BM_PlanRestore)->DenseRange(0, 5);

void BM_BootAndInvoke(benchmark::State& state) {
  const auto& art = lorem();
  const auto strategy = restore::kAllStrategies[state.range(0)];
  const auto plan = restore::plan_restore(strategy, art.spec, art.inputs());
  const cost::CostParams params;
  for (auto _ : state) {
    auto b = restore::boot(plan, art.spec, params);
    benchmark::DoNotOptimize(restore::invoke(b.state, art.spec, 1, params));
  }
  state.SetLabel(std::string(restore::strategy_name(strategy)));
}
BENCHMARK(BM_BootAndInvoke)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_ModelMinOverhead(benchmark::State& state) {
  const cost::CostParams params;
  std::uint64_t pages = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cost::model_min_overhead(pages++ % 5000, 40, cost::Micros(5000), params));
  }
}
BENCHMARK(BM_ModelMinOverhead);

void BM_DiscreteThroughput(benchmark::State& state) {
  const throughput::MachineSpec reg{64ULL << 30, 16ULL << 30, 0};
  const throughput::MachineSpec sf{64ULL << 30, 16ULL << 30, 196ULL << 20};
  const throughput::WorkloadMix mix{0.3, 450000, 1350000, 470000};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        throughput::simulate_discrete(reg, sf, mix, state.range(0), 1));
  }
}
BENCHMARK(BM_DiscreteThroughput)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
