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

#include "snaplab/guest/state.hpp"
#include "snaplab/guest/workload.hpp"

namespace snaplab::guest {

// Seeded non-determinism for Execution phases. When enabled, each Execution
// phase ends with `jitter_reads` extra Reads of pages drawn uniformly from
// guest memory by a generator seeded only from `jitter_seed`.
struct ExecOptions {
  bool jitter = false;
  std::uint64_t jitter_seed = 0;
  std::uint32_t jitter_reads = 64;
};

// Step seed actually used by an Execution-phase Write.
std::uint64_t execution_step_seed(std::uint64_t step_seed,
                                  std::uint64_t request_seed) noexcept;

// Interprets phases [range.begin, range.end) against `state`. Returns the
// declared compute time in microseconds.
//
// Pre: state.registers.phase_index == range.begin and step_index == 0.
// Throws PageOutOfRange, AppFsNotMounted, InvariantViolation (bad range).
std::uint64_t run_phases(GuestState& state, const WorkloadSpec& spec,
                         PhaseRange range, TrackingFlags& tracking,
                         std::uint64_t request_seed,
                         const ExecOptions& options = {});

// FNV-1a 64 over every page digest in index order, then registers and device
// fields in declared order.
std::uint64_t state_digest(const GuestState& state);

}  // namespace snaplab::guest
