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

#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <set>

#include "snaplab/common/error.hpp"
#include "snaplab/guest/interpreter.hpp"
#include "snaplab/restore/instance.hpp"
#include "snaplab/restore/plan.hpp"
#include "snaplab/snapshot/generate.hpp"
#include "support.hpp"

namespace snaplab::restore {
namespace {

using cost::Micros;
using snaplab::testing::ref_page;
using snaplab::testing::small_function;
using snaplab::testing::small_prefix;

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

struct Artifacts {
  guest::WorkloadSpec spec;
  std::shared_ptr<const snapshot::BaseSnapshot> base;
  std::shared_ptr<const snapshot::DiffSnapshot> diff;
  std::shared_ptr<const snapshot::FullSnapshot> full;
  snapshot::WorkingSetFile ws;
  snapshot::WorkingSetFile full_ws;

  explicit Artifacts(guest::WorkloadSpec s, std::uint64_t seed = 1) : spec(std::move(s)) {
    base = std::make_shared<snapshot::BaseSnapshot>(snapshot::generate_base(spec));
    diff = std::make_shared<snapshot::DiffSnapshot>(snapshot::generate_diff(spec, *base));
    full = std::make_shared<snapshot::FullSnapshot>(snapshot::generate_full(spec));
    ws = snapshot::generate_ws(spec, *base, *diff, seed);
    full_ws = snapshot::generate_full_ws(spec, *full, seed);
  }
  PlanInputs inputs() const { return {base, diff, &ws, full, &full_ws}; }
  RestorePlan plan(StrategyId s) const { return plan_restore(s, spec, inputs()); }
};

// FunctionInit writes only fresh pages [100, 104); Execution reads 100, 101.
guest::WorkloadSpec four_page_function() {
  auto b = small_prefix("four");
  b.appfs(100, 4);
  b.phase("init", guest::Provenance::kFunctionInit).mount().write(100, 4, 21).compute(10);
  b.phase("exec", guest::Provenance::kExecution).read(100, 2).compute(5);
  return b.build();
}

std::vector<PageId> pages_with(const RestorePlan& plan, PagePolicy p) {
  std::vector<PageId> out;
  for (PageId i = 0; i < plan.policy_map.size(); ++i) {
    if (plan.policy_map[i] == p) out.push_back(i);
  }
  return out;
}

TEST(Strategy, NamesRoundTrip) {
  for (StrategyId s : kAllStrategies) EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  EXPECT_EQ(strategy_name(StrategyId::kSnapFaasMinus), "snapfaas-");
  EXPECT_EQ(strategy_name(StrategyId::kFullDemand), "full-demand");
  EXPECT_FALSE(parse_strategy("firecracker").has_value());
}

TEST(Plan, SnapFaasSplitsDiffByWorkingSet) {
  const Artifacts art(four_page_function());
  ASSERT_EQ(art.ws.ws_page_ids, (std::vector<PageId>{100, 101}));
  const RestorePlan plan = art.plan(StrategyId::kSnapFaas);
  EXPECT_EQ(plan.eager_page_ids, (std::vector<PageId>{100, 101}));
  EXPECT_EQ(pages_with(plan, PagePolicy::kEagerDisk), plan.eager_page_ids);
  EXPECT_EQ(pages_with(plan, PagePolicy::kDemandDisk), (std::vector<PageId>{102, 103}));
  EXPECT_EQ(pages_with(plan, PagePolicy::kSharedCow), art.base->pages.ids());
  EXPECT_TRUE(plan.phases_to_execute.empty());
}

TEST(Plan, RegularExecutesEverythingBeforeExecution) {
  const Artifacts art(small_function());
  const RestorePlan plan = plan_restore(StrategyId::kRegular, art.spec, {});
  EXPECT_EQ(plan.count(PagePolicy::kZeroFill), art.spec.memory_pages);
  EXPECT_TRUE(plan.eager_page_ids.empty());
  EXPECT_EQ(plan.phases_to_execute, (guest::PhaseRange{0, 4}));
  EXPECT_FALSE(plan.metadata_source.has_value());
}

TEST(Plan, SeussRunsFunctionInitOnBase) {
  const Artifacts art(small_function());
  const RestorePlan plan = art.plan(StrategyId::kSeuss);
  EXPECT_EQ(plan.phases_to_execute, art.spec.function_init_phases());
  EXPECT_EQ(pages_with(plan, PagePolicy::kSharedCow), art.base->pages.ids());
  EXPECT_TRUE(plan.eager_page_ids.empty());
  ASSERT_TRUE(plan.metadata_source.has_value());
  EXPECT_EQ(plan.metadata_source->id, art.base->id());
}

TEST(Plan, SnapFaasWithEmptyDiffMatchesSeussWithoutInit) {
  auto b = small_prefix("idle");
  b.phase("init", guest::Provenance::kFunctionInit).mount().compute(10);
  b.phase("exec", guest::Provenance::kExecution).read(0, 2).compute(5);
  const Artifacts art(b.build());
  const RestorePlan sf = art.plan(StrategyId::kSnapFaas);
  const RestorePlan seuss = art.plan(StrategyId::kSeuss);
  EXPECT_EQ(sf.policy_map, seuss.policy_map);
  EXPECT_TRUE(sf.phases_to_execute.empty());
  EXPECT_FALSE(seuss.phases_to_execute.empty());
}

TEST(Plan, ReapWithCompleteWorkingSetHasNoDemandPages) {
  const Artifacts art(small_function());
  snapshot::WorkingSetFile everything{art.full->id(), art.full->pages.ids(), 1};
  PlanInputs in = art.inputs();
  in.full_ws = &everything;
  const RestorePlan plan = plan_restore(StrategyId::kReap, art.spec, in);
  EXPECT_EQ(plan.count(PagePolicy::kDemandDisk), 0u);
  EXPECT_EQ(plan.eager_page_ids, art.full->pages.ids());
}

TEST(Plan, FullDemandFaultsEverySnapshotPage) {
  const Artifacts art(small_function());
  const RestorePlan plan = art.plan(StrategyId::kFullDemand);
  EXPECT_EQ(pages_with(plan, PagePolicy::kDemandDisk), art.full->pages.ids());
  EXPECT_TRUE(plan.phases_to_execute.empty());
}

TEST(Plan, MissingArtifactsNamed) {
  const Artifacts art(small_function());
  const PlanInputs all = art.inputs();
  auto without = [&](auto mutate) {
    PlanInputs in = all;
    mutate(in);
    return in;
  };
  const struct {
    StrategyId s;
    PlanInputs in;
  } cases[] = {
      {StrategyId::kFullDemand, without([](PlanInputs& i) { i.full = nullptr; })},
      {StrategyId::kReap, without([](PlanInputs& i) { i.full_ws = nullptr; })},
      {StrategyId::kSeuss, without([](PlanInputs& i) { i.base = nullptr; })},
      {StrategyId::kSnapFaasMinus, without([](PlanInputs& i) { i.diff = nullptr; })},
      {StrategyId::kSnapFaas, without([](PlanInputs& i) { i.ws = nullptr; })},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(code_of([&] { plan_restore(c.s, art.spec, c.in); }), ErrorCode::kMissingArtifact)
        << strategy_name(c.s);
  }
}

TEST(Plan, ForeignWorkingSetAndMismatchedBase) {
  const Artifacts art(small_function());
  const Artifacts other(four_page_function());
  PlanInputs in = art.inputs();
  in.ws = &other.ws;
  EXPECT_EQ(code_of([&] { plan_restore(StrategyId::kSnapFaas, art.spec, in); }),
            ErrorCode::kForeignWorkingSet);

  auto changed = small_prefix("changed", 256);
  changed.write(40, 1, 3);
  changed.phase("init", guest::Provenance::kFunctionInit).mount();
  changed.phase("exec", guest::Provenance::kExecution).compute(1);
  const Artifacts alien(changed.build());
  in = art.inputs();
  in.base = alien.base;
  EXPECT_EQ(code_of([&] { plan_restore(StrategyId::kSnapFaasMinus, art.spec, in); }),
            ErrorCode::kBaseMismatch);
}

// Boot and exec latencies for the small function, worked by hand from the
// default parameters (c 6000, residual 5000, disk fault 50, COW 1, 500 MB/s).
TEST(Boot, LatenciesPerStrategy) {
  const Artifacts art(small_function());
  const cost::CostParams params;
  struct Want {
    StrategyId s;
    Micros boot, exec;
    std::uint64_t demand, cow;
  };
  const Want cases[] = {
      // Kernel..FunctionInit compute 6500.
      {StrategyId::kRegular, Micros(17500), Micros(700), 0, 0},
      // Reads 3, 100, 101 and the write to 25 all fault from disk.
      {StrategyId::kFullDemand, Micros(11000), Micros(900), 4, 0},
      {StrategyId::kReap, Micros(11000), Micros(700), 0, 0},
      // FunctionInit (3000) runs at boot and copies base page 5.
      {StrategyId::kSeuss, Micros(14001), Micros(701), 0, 1},
      {StrategyId::kSnapFaasMinus, Micros(11000), Micros(701), 0, 1},
      {StrategyId::kSnapFaas, Micros(11000), Micros(701), 0, 1},
  };
  for (const Want& w : cases) {
    SCOPED_TRACE(std::string(strategy_name(w.s)));
    BootResult b = boot(art.plan(w.s), art.spec, params);
    EXPECT_EQ(b.boot_us, w.boot);
    EXPECT_TRUE(b.state.device.vsock_connected);
    const InvokeResult r = invoke(b.state, art.spec, 1, params);
    EXPECT_EQ(r.exec_us, w.exec);
    EXPECT_EQ(r.ledger.demand_pages_disk, w.demand);
    EXPECT_EQ(r.ledger.cow_faults, w.cow);
    EXPECT_EQ(r.ledger.compute_us, Micros(700));

    // Warm re-invoke: everything touched is private now.
    const InvokeResult warm = invoke(b.state, art.spec, 1, params);
    EXPECT_EQ(warm.exec_us, Micros(700));
  }
}

TEST(Boot, SnapFaasMinusThreePageDiffIsConfigurationBound) {
  auto b = small_prefix("three");
  b.phase("init", guest::Provenance::kFunctionInit).mount().write(100, 3, 21);
  b.phase("exec", guest::Provenance::kExecution).read(100, 1);
  const Artifacts art(b.build());
  cost::CostParams params;
  const BootResult r = boot(art.plan(StrategyId::kSnapFaasMinus), art.spec, params);
  EXPECT_EQ(r.ledger.eager_pages_disk, 3u);
  // max(6000, 3 * 4096 / 500e6 s = 24.576 us) + 5000.
  EXPECT_EQ(r.boot_us, Micros(11000));
  EXPECT_EQ(r.ledger.residual_init_us, Micros(5000));

  params.c_us = Micros(10);
  const BootResult disk_bound = boot(art.plan(StrategyId::kSnapFaasMinus), art.spec, params);
  EXPECT_EQ(disk_bound.boot_us, Micros(24576, 1000) + Micros(5000));
}

TEST(Boot, PlanSpecMismatch) {
  const Artifacts art(small_function());
  const RestorePlan plan = art.plan(StrategyId::kSnapFaas);
  cost::CostParams params;

  guest::WorkloadSpec bigger = art.spec;
  bigger.memory_pages = 512;
  EXPECT_EQ(code_of([&] { boot(plan, bigger, params); }), ErrorCode::kPlanSpecMismatch);

  guest::WorkloadSpec reseeded = art.spec;
  reseeded.workload_seed = 8;
  EXPECT_EQ(code_of([&] { boot(plan, reseeded, params); }), ErrorCode::kPlanSpecMismatch);

  params.page_size_bytes = 8192;
  EXPECT_EQ(code_of([&] { boot(plan, art.spec, params); }), ErrorCode::kPlanSpecMismatch);
}

TEST(Invoke, NotRequestReady) {
  const Artifacts art(small_function());
  const cost::CostParams params;
  guest::GuestState fresh = guest::fresh_state(7, 256, 4096);
  EXPECT_EQ(code_of([&] { invoke(fresh, art.spec, 1, params); }), ErrorCode::kNotRequestReady);

  BootResult b = boot(art.plan(StrategyId::kSnapFaas), art.spec, params);
  b.state.device.vsock_connected = false;
  EXPECT_EQ(code_of([&] { invoke(b.state, art.spec, 1, params); }),
            ErrorCode::kNotRequestReady);
}

TEST(Invoke, ExactWorkingSetMeansNoDiskFaults) {
  const Artifacts art(small_function(), 9);
  const cost::CostParams params;
  BootResult b = boot(art.plan(StrategyId::kSnapFaas), art.spec, params);
  EXPECT_EQ(invoke(b.state, art.spec, 9, params).ledger.demand_pages_disk, 0u);
}

TEST(Invoke, FaultCountsMatchAccessTrace) {
  const Artifacts art(small_function());
  const cost::CostParams params;
  for (StrategyId s : kAllStrategies) {
    SCOPED_TRACE(std::string(strategy_name(s)));
    const RestorePlan plan = art.plan(s);
    BootResult b = boot(plan, art.spec, params);
    b.state.memory.set_trace(true);
    const InvokeResult r = invoke(b.state, art.spec, 1, params);
    std::set<PageId> demand, cow;
    for (const auto& ev : b.state.memory.trace()) {
      if (plan.policy(ev.page) == PagePolicy::kDemandDisk) demand.insert(ev.page);
      if (ev.write && plan.policy(ev.page) == PagePolicy::kSharedCow) cow.insert(ev.page);
    }
    // Seuss rewrote page 5 during boot; it is private by the time Execution runs.
    EXPECT_EQ(r.ledger.demand_pages_disk, demand.size());
    EXPECT_EQ(r.ledger.cow_faults, cow.size());
  }
}

TEST(Invoke, EndStateMatchesRegularForEveryStrategy) {
  const Artifacts art(small_function());
  const cost::CostParams params;
  BootResult reg = boot(art.plan(StrategyId::kRegular), art.spec, params);
  const InvokeResult reg_r = invoke(reg.state, art.spec, 5, params);
  const std::uint64_t want = guest::state_digest(reg.state);
  for (StrategyId s : kAllStrategies) {
    SCOPED_TRACE(std::string(strategy_name(s)));
    BootResult b = boot(art.plan(s), art.spec, params);
    const InvokeResult r = invoke(b.state, art.spec, 5, params);
    EXPECT_EQ(r.response_digest, reg_r.response_digest);
    EXPECT_EQ(guest::state_digest(b.state), want);
  }
}

TEST(Materialize, BaseOnlyRestoreIsBasePagesOverZeros) {
  auto b = small_prefix("idle");
  b.phase("init", guest::Provenance::kFunctionInit).mount();
  b.phase("exec", guest::Provenance::kExecution).read(0, 1);
  const Artifacts art(b.build());
  const BootResult r = boot(art.plan(StrategyId::kSnapFaas), art.spec, {});
  const auto mem = materialize_memory(r.state);
  ASSERT_EQ(mem.size(), 256u * 4096);
  std::vector<std::uint8_t> want(mem.size(), 0);
  const auto& pages = art.base->pages;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    std::copy(pages.page(i).begin(), pages.page(i).end(), want.begin() + pages.id(i) * 4096);
  }
  EXPECT_EQ(mem, want);
  EXPECT_EQ(r.state.memory.counters().cow_faults, 0u);
}

TEST(Materialize, DiffOverridesBase) {
  const Artifacts art(small_function());
  const BootResult r = boot(art.plan(StrategyId::kSnapFaas), art.spec, {});
  std::vector<std::uint8_t> page(4096);
  materialize_page(r.state, 5, page);
  EXPECT_EQ(page, ref_page(7, 22, 5, 4096));
  // Page 5 is diff-backed on demand; inspection must not fault it in.
  EXPECT_EQ(r.state.memory.counters().demand_faults, 0u);
}

TEST(Materialize, SnapFaasMinusBootEqualsRegularInitMemory) {
  const Artifacts art(small_function());
  const BootResult reg = boot(art.plan(StrategyId::kRegular), art.spec, {});
  const BootResult sfm = boot(art.plan(StrategyId::kSnapFaasMinus), art.spec, {});
  EXPECT_EQ(materialize_memory(sfm.state), materialize_memory(reg.state));
  EXPECT_EQ(guest::state_digest(sfm.state), guest::state_digest(reg.state));
}

}  // namespace
}  // namespace snaplab::restore
