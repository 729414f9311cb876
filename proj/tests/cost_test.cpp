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

#include <cmath>
#include <random>

#include "snaplab/common/error.hpp"
#include "snaplab/cost/duration.hpp"
#include "snaplab/cost/model.hpp"
#include "snaplab/cost/params.hpp"
#include "snaplab/restore/instance.hpp"
#include "snaplab/restore/plan.hpp"
#include "snaplab/snapshot/generate.hpp"
#include "support.hpp"

namespace snaplab::cost {
namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

TEST(Rounding, HalfUpToTenths) {
  EXPECT_EQ(round_tenths(Micros(7002)).str(), "7002.0");
  EXPECT_EQ(round_tenths(Micros(5, 100)).str(), "0.1");
  EXPECT_EQ(round_tenths(Micros(4, 100)).str(), "0.0");
  EXPECT_EQ(round_tenths(Micros(-5, 100)).str(), "0.0");
  EXPECT_EQ(round_tenths(Micros(-6, 100)).str(), "-0.1");
  EXPECT_EQ(round_tenths(Micros(24576, 1000)).str(), "24.6");
  EXPECT_EQ(round_tenths(Micros(1, 3)).value, 3);
  EXPECT_EQ(format_ms_tenths(Micros(5750)), "5.8");
  EXPECT_EQ(format_ms_tenths(Micros(5700)), "5.7");
  EXPECT_EQ(format_ms_tenths(Micros(0)), "0.0");
}

TEST(Rounding, ConfigInputToThousandths) {
  EXPECT_EQ(micros_from_double(1.5), Micros(3, 2));
  EXPECT_EQ(micros_from_double(0.0004), Micros(0));
  EXPECT_DOUBLE_EQ(to_double(Micros(1, 4)), 0.25);
}

TEST(Model, DegenerateClausesGiveC) {
  const CostParams p;
  EXPECT_EQ(model_min_overhead(0, 0, Micros(0), p).str(), "6000.0");
}

TEST(Model, WorkedExample) {
  // max(6000, 3 * 4096 B / 500 MB/s) + 1000 + 2 * 1.
  const CostParams p;
  EXPECT_EQ(p.disk_transfer_us(3), Micros(24576, 1000));
  EXPECT_EQ(model_min_overhead(3, 2, Micros(1000), p).str(), "7002.0");
}

TEST(Model, FloorRegimeIsCPlusInit) {
  // A diff working set small enough to stay under c leaves c + init; with
  // c = 6 ms and a 5 ms channel connect plus ~4 ms of init the floor sits in
  // the mid-teens of milliseconds.
  const CostParams p;
  const auto t = model_min_overhead(100, 0, Micros(9000), p);
  EXPECT_EQ(t.str(), "15000.0");
}

TEST(Model, MonotoneInEveryArgument) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> pages(0, 5000);
  std::uniform_int_distribution<std::int64_t> us(0, 20000);
  for (int i = 0; i < 500; ++i) {
    CostParams p;
    const std::uint64_t u = pages(rng), s = pages(rng);
    const Micros init(us(rng));
    const auto base = model_min_overhead_exact(u, s, init, p.c_us, p);
    EXPECT_LE(base, model_min_overhead_exact(u + 1, s, init, p.c_us, p));
    EXPECT_LE(base, model_min_overhead_exact(u, s + 1, init, p.c_us, p));
    EXPECT_LE(base, model_min_overhead_exact(u, s, init + Micros(1), p.c_us, p));
    CostParams faster = p;
    faster.bw_disk_bytes_per_s = p.bw_disk_bytes_per_s * 2;
    EXPECT_GE(base, model_min_overhead_exact(u, s, init, faster.c_us, faster));
  }
}

TEST(Model, DiskTermThresholdIsCeilOfCTimesBwOverP) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> c_dist(1, 20000);
  std::uniform_int_distribution<std::int64_t> bw_dist(1'000'000, 4'000'000'000);
  for (int i = 0; i < 200; ++i) {
    CostParams p;
    p.c_us = Micros(c_dist(rng));
    p.bw_disk_bytes_per_s = bw_dist(rng);
    // ceil(c[us] * bw / (P * 1e6)) in integers.
    const unsigned __int128 num =
        static_cast<unsigned __int128>(p.c_us.numerator()) * p.bw_disk_bytes_per_s;
    const unsigned __int128 den = static_cast<unsigned __int128>(p.page_size_bytes) * 1'000'000;
    const auto n = static_cast<std::uint64_t>((num + den - 1) / den);
    EXPECT_GE(p.disk_transfer_us(n), p.c_us);
    if (n > 0) EXPECT_LT(p.disk_transfer_us(n - 1), p.c_us);
    EXPECT_EQ(model_min_overhead_exact(n, 0, Micros(0), p.c_us, p), p.disk_transfer_us(n));
  }
}

TEST(Model, EagerRestoreAddsOneSeekPerBatch) {
  CostParams p;
  p.eager_batch_seek_us = Micros(50);
  EXPECT_EQ(eager_restore_us(0, p), Micros(0));
  EXPECT_EQ(eager_restore_us(3, p), Micros(24576, 1000) + Micros(50));
}

TEST(Breakdown, ThreePageDiffGivesBOfAFortiethMillisecond) {
  const CostParams p;
  EventLedger l;
  l.eager_pages_disk = 3;
  l.residual_init_us = Micros(5000);
  const Micros warm(700);
  const auto b = breakdown(l, warm, Micros(11000), Micros(701), p, "snapfaas-");
  EXPECT_EQ(b.a_us, Micros(6000));
  EXPECT_EQ(b.b_us, Micros(24576, 1000));
  EXPECT_EQ(round_tenths(b.b_us).str(), "24.6");  // 0.0246 ms
  EXPECT_EQ(b.c_us, Micros(5000));
  EXPECT_EQ(b.d_us, Micros(1));
  EXPECT_EQ(b.composed(), Micros(11001));
}

TEST(Breakdown, ReportsInMillisecondTenths) {
  // A row shaped like a runtime-language function under the layered strategy:
  // c 5.7 ms, 1257 eager pages, 5 ms channel connect, 0.8 ms slowdown.
  CostParams p;
  p.c_us = Micros(5700);
  EventLedger l;
  l.eager_pages_disk = 1257;
  l.residual_init_us = Micros(5000);
  const Micros warm(1000);
  const Micros boot = max(p.c_us, p.disk_transfer_us(1257)) + l.residual_init_us;
  const auto b = breakdown(l, warm, boot, Micros(1800), p, "snapfaas");
  EXPECT_EQ(format_ms_tenths(b.a_us), "5.7");
  EXPECT_EQ(format_ms_tenths(b.b_us), "10.3");
  EXPECT_EQ(format_ms_tenths(b.c_us), "5.0");
  EXPECT_EQ(format_ms_tenths(b.d_us), "0.8");
}

TEST(Breakdown, WarmReinvokeIsAllZero) {
  const CostParams p;
  EventLedger l;
  const auto b = breakdown(l, Micros(700), Micros(0), Micros(700), p, "regular");
  EXPECT_EQ(b.a_us, Micros(0));
  EXPECT_EQ(b.b_us, Micros(0));
  EXPECT_EQ(b.c_us, Micros(0));
  EXPECT_EQ(b.d_us, Micros(0));
}

TEST(Breakdown, Errors) {
  const CostParams p;
  EventLedger l;
  l.residual_init_us = Micros(5000);
  EXPECT_EQ(code_of([&] { breakdown(l, Micros(700), Micros(11000), Micros(600), p, "x"); }),
            ErrorCode::kNegativeD);
  EXPECT_EQ(code_of([&] { breakdown(l, Micros(700), Micros(12000), Micros(700), p, "x"); }),
            ErrorCode::kInvariantViolation);
}

TEST(Breakdown, PerStrategyC) {
  CostParams p;
  p.c_us_by_strategy.emplace("seuss", Micros(9000));
  EXPECT_EQ(p.c_for("seuss"), Micros(9000));
  EXPECT_EQ(p.c_for("reap"), Micros(6000));
  EventLedger l;
  l.residual_init_us = Micros(100);
  EXPECT_EQ(breakdown(l, Micros(0), Micros(9100), Micros(0), p, "seuss").a_us, Micros(9000));
}

TEST(ModelVsSim, PreconditionAndExactness) {
  const CostParams p;
  EventLedger l;
  l.eager_pages_disk = 3;
  l.cow_faults = 2;
  l.residual_init_us = Micros(1000);
  LatencyBreakdown b{Micros(6000), p.disk_transfer_us(3), Micros(1000), Micros(2)};
  EXPECT_EQ(validate_model_vs_sim(l, b, p, "snapfaas-"), Micros(0));
  l.demand_pages_disk = 1;
  EXPECT_EQ(code_of([&] { validate_model_vs_sim(l, b, p, "reap"); }),
            ErrorCode::kPreconditionViolated);
}

TEST(ModelVsSim, ReapWithTruncatedWorkingSetViolatesPrecondition) {
  using namespace snaplab::restore;
  const auto spec = snaplab::testing::small_function();
  auto full = std::make_shared<snapshot::FullSnapshot>(snapshot::generate_full(spec));
  auto ws = snapshot::generate_full_ws(spec, *full, 1);
  ws.ws_page_ids.pop_back();
  PlanInputs in;
  in.full = full;
  in.full_ws = &ws;
  const CostParams p;
  BootResult b = boot(plan_restore(StrategyId::kReap, spec, in), spec, p);
  const InvokeResult r = invoke(b.state, spec, 1, p);
  EventLedger total = b.ledger;
  total += r.ledger;
  const auto bd = breakdown(total, Micros(700), b.boot_us, r.exec_us, p, "reap");
  EXPECT_EQ(code_of([&] { validate_model_vs_sim(total, bd, p, "reap"); }),
            ErrorCode::kPreconditionViolated);
}

TEST(Params, JsonRoundTripAndValidation) {
  CostParams p;
  p.c_us = Micros(5500);
  p.lat_mem_fault_us = Micros(3, 2);
  p.c_us_by_strategy.emplace("seuss", Micros(9000));
  const CostParams back = parse_cost_params(cost_params_to_json(p));
  EXPECT_EQ(back.c_us, p.c_us);
  EXPECT_EQ(back.lat_mem_fault_us, p.lat_mem_fault_us);
  EXPECT_EQ(back.c_for("seuss"), Micros(9000));

  EXPECT_EQ(code_of([] { parse_cost_params(R"({"c_us": -1})"); }),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(code_of([] { parse_cost_params(R"({"page_size_bytes": 3000})"); }),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(code_of([] { parse_cost_params(R"({"c_us": "fast"})"); }),
            ErrorCode::kMalformedDocument);
  EXPECT_EQ(code_of([] { parse_cost_params("[1]"); }), ErrorCode::kMalformedDocument);
}

TEST(Params, ShippedDefaultsKeepMemoryFarFasterThanDisk) {
  const CostParams p = load_cost_params(snaplab::testing::scenario_dir() / "cost_params.json");
  EXPECT_EQ(p.c_us, Micros(6000));
  EXPECT_EQ(p.bw_disk_bytes_per_s, 500'000'000);
  // A COW page copy is much cheaper than a synchronous disk fault.
  EXPECT_GE(p.lat_disk_fault_us / p.lat_mem_fault_us, Micros(50));
}

}  // namespace
}  // namespace snaplab::cost
