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

#include "snaplab/cost/model.hpp"

#include <fmt/format.h>

#include "snaplab/common/error.hpp"

namespace snaplab::cost {

EventLedger& EventLedger::operator+=(const EventLedger& other) {
  eager_pages_disk += other.eager_pages_disk;
  demand_pages_disk += other.demand_pages_disk;
  cow_faults += other.cow_faults;
  compute_us += other.compute_us;
  residual_init_us += other.residual_init_us;
  residual_demand_pages += other.residual_demand_pages;
  residual_cow_faults += other.residual_cow_faults;
  return *this;
}

Micros model_min_overhead_exact(std::uint64_t pgs_unique, std::uint64_t pgs_shared,
                                const Micros& init_us, const Micros& c_us,
                                const CostParams& params) {
  return max(c_us, params.disk_transfer_us(pgs_unique)) + init_us +
         params.lat_mem_fault_us * static_cast<std::int64_t>(pgs_shared);
}

TenthMicros model_min_overhead(std::uint64_t pgs_unique, std::uint64_t pgs_shared,
                               const Micros& init_us, const CostParams& params) {
  return round_tenths(
      model_min_overhead_exact(pgs_unique, pgs_shared, init_us, params.c_us, params));
}

Micros eager_restore_us(std::uint64_t eager_pages, const CostParams& params) {
  if (eager_pages == 0) return Micros(0);
  return params.disk_transfer_us(eager_pages) + params.eager_batch_seek_us;
}

LatencyBreakdown breakdown(const EventLedger& ledger, const Micros& warm_exec_us,
                           const Micros& measured_boot_us,
                           const Micros& measured_exec_us, const CostParams& params,
                           std::string_view strategy) {
  LatencyBreakdown out;
  if (measured_boot_us != Micros(0)) {
    out.a_us = params.c_for(strategy);
    out.b_us = eager_restore_us(ledger.eager_pages_disk, params);
    out.c_us = ledger.residual_init_us;
  }
  out.d_us = measured_exec_us - warm_exec_us;
  if (out.d_us < 0) {
    throw Error(ErrorCode::kNegativeD,
                fmt::format("{}: cold execution {} us is faster than warm {} us", strategy,
                            to_double(measured_exec_us), to_double(warm_exec_us)));
  }
  const Micros expected = measured_boot_us + measured_exec_us - warm_exec_us;
  if (out.composed() != expected) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("{}: breakdown recomposes to {} us, measured overhead {} us",
                            strategy, to_double(out.composed()), to_double(expected)));
  }
  return out;
}

Micros validate_model_vs_sim(const EventLedger& ledger,
                             const LatencyBreakdown& breakdown,
                             const CostParams& params, std::string_view strategy) {
  if (ledger.demand_pages_disk != 0 || ledger.residual_demand_pages != 0) {
    throw Error(ErrorCode::kPreconditionViolated,
                fmt::format("{}: {} demand faults present; the model assumes none",
                            strategy,
                            ledger.demand_pages_disk + ledger.residual_demand_pages));
  }
  const Micros model =
      model_min_overhead_exact(ledger.eager_pages_disk, ledger.cow_faults,
                               ledger.residual_init_us, params.c_for(strategy), params);
  const Micros delta = breakdown.composed() - model;
  return delta < 0 ? -delta : delta;
}

}  // namespace snaplab::cost
