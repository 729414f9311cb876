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

#pragma once

#include <cstdint>
#include <string_view>

#include "snaplab/cost/duration.hpp"
#include "snaplab/cost/params.hpp"

namespace snaplab::cost {

// Page events and time charged to one boot, one invoke, or both combined.
struct EventLedger {
  std::uint64_t eager_pages_disk = 0;   // pgs_unique
  std::uint64_t demand_pages_disk = 0;  // synchronous disk faults in execution
  std::uint64_t cow_faults = 0;         // pgs_shared
  Micros compute_us{0};                 // declared execution compute
  Micros residual_init_us{0};           // init: everything run after restore
  // Faults taken while running residual init; already priced into
  // residual_init_us.
  std::uint64_t residual_demand_pages = 0;
  std::uint64_t residual_cow_faults = 0;

  EventLedger& operator+=(const EventLedger& other);
  bool operator==(const EventLedger&) const = default;
};

// The four clauses of the overhead model, in order: configuration and
// non-memory restore (A), eager disk restore (B), residual initialization (C)
// and execution slowdown against a warm run (D).
struct LatencyBreakdown {
  Micros a_us{0};
  Micros b_us{0};
  Micros c_us{0};
  Micros d_us{0};

  Micros composed() const { return max(a_us, b_us) + c_us + d_us; }
};

// max(c, pgs_unique * P / bw_disk) + init + pgs_shared * lat_mem, exact.
Micros model_min_overhead_exact(std::uint64_t pgs_unique, std::uint64_t pgs_shared,
                                const Micros& init_us, const Micros& c_us,
                                const CostParams& params);

// Same, rounded half-up to 0.1 us, using params.c_us.
TenthMicros model_min_overhead(std::uint64_t pgs_unique, std::uint64_t pgs_shared,
                               const Micros& init_us, const CostParams& params);

// Eager restore clause: bandwidth term plus one batch seek when any page is
// loaded eagerly.
Micros eager_restore_us(std::uint64_t eager_pages, const CostParams& params);

// Splits a measured cold start into A-D. A zero boot latency denotes a warm
// re-invoke and yields A = B = C = 0. Throws NegativeD when the cold
// execution beat the warm baseline, and InvariantViolation if the clauses do
// not recompose to (boot + exec - warm).
LatencyBreakdown breakdown(const EventLedger& ledger, const Micros& warm_exec_us,
                           const Micros& measured_boot_us,
                           const Micros& measured_exec_us, const CostParams& params,
                           std::string_view strategy);

// |composed overhead - model minimum|. Throws PreconditionViolated if the
// ledger has any demand faults, since the model assumes none.
Micros validate_model_vs_sim(const EventLedger& ledger,
                             const LatencyBreakdown& breakdown,
                             const CostParams& params, std::string_view strategy);

}  // namespace snaplab::cost
