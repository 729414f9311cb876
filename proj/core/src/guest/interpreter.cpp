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

#include "snaplab/guest/interpreter.hpp"

#include <fmt/format.h>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"

namespace snaplab::guest {
namespace {

void fold_digest(Registers& regs, std::uint64_t page_digest) {
  Fnv1a64 h(regs.read_checksum);
  h.update_u64(page_digest);
  regs.read_checksum = h.value();
}

void check_appfs(const WorkloadSpec& spec, const Phase& phase,
                 const DeviceState& device, const PageRange& range) {
  if (phase.provenance != Provenance::kExecution || device.appfs_mounted) return;
  if (spec.appfs_pages && spec.appfs_pages->overlaps(range)) {
    throw Error(ErrorCode::kAppFsNotMounted,
                fmt::format("phase '{}' touches AppFS pages [{}, {}) before mount",
                            phase.name, range.start, range.end()));
  }
}

void check_range(const GuestState& state, const Phase& phase,
                 const PageRange& range) {
  if (range.end() > state.memory.page_count() || range.end() < range.start) {
    throw Error(ErrorCode::kPageOutOfRange,
                fmt::format("phase '{}' touches pages [{}, {}) beyond {} pages",
                            phase.name, range.start, range.start + range.count,
                            state.memory.page_count()));
  }
}

void read_page(GuestState& state, TrackingFlags& tracking, PageId page) {
  fold_digest(state.registers, state.memory.read(page));
  if (tracking.access_tracking) tracking.accessed_set.set(page);
}

}  // namespace

std::uint64_t execution_step_seed(std::uint64_t step_seed,
                                  std::uint64_t request_seed) noexcept {
  return step_seed ^ splitmix64(request_seed);
}

std::uint64_t run_phases(GuestState& state, const WorkloadSpec& spec,
                         PhaseRange range, TrackingFlags& tracking,
                         std::uint64_t request_seed,
                         const ExecOptions& options) {
  if (range.end > spec.phases.size() || range.begin > range.end) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("phase range [{}, {}) outside {} phases", range.begin,
                            range.end, spec.phases.size()));
  }
  if (state.registers.phase_index != range.begin || state.registers.step_index != 0) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("instance is at phase {} step {}, range starts at {}",
                            state.registers.phase_index, state.registers.step_index,
                            range.begin));
  }

  std::uint64_t compute_us = 0;
  for (std::size_t pi = range.begin; pi < range.end; ++pi) {
    const Phase& phase = spec.phases[pi];
    const bool execution = phase.provenance == Provenance::kExecution;
    for (const Step& step : phase.steps) {
      if (const auto* w = std::get_if<WriteStep>(&step)) {
        check_range(state, phase, w->range);
        check_appfs(spec, phase, state.device, w->range);
        const std::uint64_t seed =
            execution ? execution_step_seed(w->step_seed, request_seed) : w->step_seed;
        for (PageId p = w->range.start; p < w->range.end(); ++p) {
          state.memory.write(p, seed);
          if (tracking.dirty_tracking) tracking.dirty_set.set(p);
          if (tracking.access_tracking) tracking.accessed_set.set(p);
        }
      } else if (const auto* r = std::get_if<ReadStep>(&step)) {
        check_range(state, phase, r->range);
        check_appfs(spec, phase, state.device, r->range);
        for (PageId p = r->range.start; p < r->range.end(); ++p) {
          read_page(state, tracking, p);
        }
      } else if (const auto* c = std::get_if<ComputeStep>(&step)) {
        compute_us += c->duration_us;
      } else {
        state.device.appfs_mounted = true;
      }
      ++state.registers.step_index;
    }
    if (execution && options.jitter && state.memory.page_count() > 0) {
      // Counter-based draws keep the sequence identical across platforms.
      const std::uint64_t stream = splitmix64(options.jitter_seed ^ (pi * 0x9E3779B97F4A7C15ULL));
      for (std::uint32_t i = 0; i < options.jitter_reads; ++i) {
        read_page(state, tracking, splitmix64(stream + i) % state.memory.page_count());
      }
    }
    if (phase.provenance == Provenance::kOsInit && state.device.net.empty()) {
      state.device.net = static_network();
    }
    ++state.registers.phase_index;
    state.registers.step_index = 0;
  }
  return compute_us;
}

std::uint64_t state_digest(const GuestState& state) {
  Fnv1a64 h;
  const auto& mem = state.memory;
  for (PageId p = 0; p < mem.page_count(); ++p) h.update_u64(mem.peek_digest(p));
  h.update_u64(state.registers.phase_index);
  h.update_u64(state.registers.step_index);
  h.update_u64(state.registers.read_checksum);
  const DeviceState& d = state.device;
  h.update_byte(d.appfs_mounted ? 1 : 0);
  h.update_byte(d.vsock_connected ? 1 : 0);
  for (const std::string* s : {&d.net.local_ip, &d.net.gateway_ip, &d.net.guest_mac,
                               &d.net.bridge_mac}) {
    h.update(*s);
    h.update_byte(0);
  }
  return h.value();
}

}  // namespace snaplab::guest
