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
#include <span>
#include <vector>

#include "snaplab/cost/model.hpp"
#include "snaplab/cost/params.hpp"
#include "snaplab/guest/interpreter.hpp"
#include "snaplab/guest/state.hpp"
#include "snaplab/guest/workload.hpp"
#include "snaplab/restore/plan.hpp"

namespace snaplab::restore {

struct BootResult {
  guest::GuestState state;
  cost::EventLedger ledger;
  cost::Micros boot_us{0};
};

struct InvokeResult {
  // Final read_checksum.
  std::uint64_t response_digest = 0;
  cost::EventLedger ledger;
  cost::Micros exec_us{0};
};

// Boots an instance under `plan`: charges max(c, eager restore), installs the
// page layers and captured registers/devices, then runs residual
// initialization (host-channel connect, plus any phases the plan still has to
// execute). Faults taken during residual phases are charged to boot.
// Throws PlanSpecMismatch when the plan or its snapshots were built for other
// geometry or another workload.
BootResult boot(const RestorePlan& plan, const guest::WorkloadSpec& spec,
                const cost::CostParams& params);

// Runs the Execution phases. A completed instance is rewound to the first
// Execution phase (warm re-invoke). Throws NotRequestReady otherwise.
InvokeResult invoke(guest::GuestState& state, const guest::WorkloadSpec& spec,
                    std::uint64_t request_seed, const cost::CostParams& params,
                    const guest::ExecOptions& options = {},
                    guest::TrackingFlags* tracking = nullptr);

// Resolved bytes of every page, without charging faults.
std::vector<std::uint8_t> materialize_memory(const guest::GuestState& state);
void materialize_page(const guest::GuestState& state, PageId page,
                      std::span<std::uint8_t> out);

}  // namespace snaplab::restore
