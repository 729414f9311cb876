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

#include "snaplab/restore/instance.hpp"

#include <fmt/format.h>

#include "snaplab/common/error.hpp"

namespace snaplab::restore {
namespace {

[[noreturn]] void mismatch(const std::string& what) {
  throw Error(ErrorCode::kPlanSpecMismatch, what);
}

void check_geometry(const snapshot::SnapshotProvenance& p,
                    const guest::WorkloadSpec& spec, std::string_view who) {
  if (p.memory_pages != spec.memory_pages || p.page_size != spec.page_size ||
      p.workload_seed != spec.workload_seed || p.language_tag != spec.language_tag) {
    mismatch(fmt::format("{} was built for {}/{} pages of {} bytes, workload '{}' is {}/{} "
                         "pages of {} bytes",
                         who, p.language_tag, p.memory_pages, p.page_size, spec.name,
                         spec.language_tag, spec.memory_pages, spec.page_size));
  }
}

void check_plan(const RestorePlan& plan, const guest::WorkloadSpec& spec,
                const cost::CostParams& params) {
  check_geometry(plan.provenance, spec, "plan");
  if (plan.provenance.prefix_digest != guest::base_prefix_digest(spec)) {
    mismatch(fmt::format("plan was built for another runtime prefix than '{}'", spec.name));
  }
  if (params.page_size_bytes != spec.page_size) {
    mismatch(fmt::format("cost parameters assume {}-byte pages, workload uses {}",
                         params.page_size_bytes, spec.page_size));
  }
  if (plan.policy_map.size() != spec.memory_pages) {
    mismatch(fmt::format("plan covers {} pages, workload has {}", plan.policy_map.size(),
                         spec.memory_pages));
  }
  if (plan.phases_to_execute.end > spec.execution_phases().begin) {
    mismatch("plan executes phases past the function-ready point");
  }
  if (plan.base) check_geometry(plan.base->meta.provenance, spec, "base snapshot");
  if (plan.disk) check_geometry(plan.disk->meta.provenance, spec, "disk snapshot");
}

}  // namespace

BootResult boot(const RestorePlan& plan, const guest::WorkloadSpec& spec,
                const cost::CostParams& params) {
  check_plan(plan, spec, params);

  BootResult out{guest::fresh_state(spec.workload_seed, spec.memory_pages, spec.page_size),
                 {}, cost::Micros(0)};
  guest::GuestState& st = out.state;

  if (plan.base) {
    const auto& pages = plan.base->pages;
    for (std::size_t i = 0; i < pages.size(); ++i) {
      if (plan.policy(pages.id(i)) == PagePolicy::kSharedCow) {
        st.memory.install_shared(pages.id(i), pages.page(i).data(), pages.digest(i));
      }
    }
    st.memory.retain(plan.base);
  }
  if (plan.disk) {
    const auto& pages = plan.disk->pages;
    for (std::size_t i = 0; i < pages.size(); ++i) {
      switch (plan.policy(pages.id(i))) {
        case PagePolicy::kEagerDisk:
          st.memory.install_eager(pages.id(i), pages.page(i).data(), pages.digest(i));
          break;
        case PagePolicy::kDemandDisk:
          st.memory.install_demand(pages.id(i), pages.page(i).data(), pages.digest(i));
          break;
        default:
          break;
      }
    }
    st.memory.retain(plan.disk);
  }
  if (plan.metadata_source) {
    st.registers = plan.metadata_source->registers;
    st.device = plan.metadata_source->device;
  }
  if (st.registers.phase_index != plan.phases_to_execute.begin) {
    mismatch(fmt::format("restored state is at phase {}, plan resumes at {}",
                         st.registers.phase_index, plan.phases_to_execute.begin));
  }

  const FaultCounters before = st.memory.counters();
  guest::TrackingFlags none;
  const std::uint64_t compute =
      guest::run_phases(st, spec, plan.phases_to_execute, none, 0);
  const FaultCounters& after = st.memory.counters();

  cost::EventLedger& ledger = out.ledger;
  ledger.eager_pages_disk = plan.eager_page_ids.size();
  ledger.residual_demand_pages = after.demand_faults - before.demand_faults;
  ledger.residual_cow_faults = after.cow_faults - before.cow_faults;
  ledger.residual_init_us =
      params.residual_init_us + cost::Micros(static_cast<std::int64_t>(compute)) +
      params.lat_disk_fault_us * static_cast<std::int64_t>(ledger.residual_demand_pages) +
      params.lat_mem_fault_us * static_cast<std::int64_t>(ledger.residual_cow_faults);
  st.device.vsock_connected = true;

  const cost::Micros a = params.c_for(strategy_name(plan.strategy));
  const cost::Micros b = cost::eager_restore_us(ledger.eager_pages_disk, params);
  out.boot_us = cost::max(a, b) + ledger.residual_init_us;
  return out;
}

InvokeResult invoke(guest::GuestState& state, const guest::WorkloadSpec& spec,
                    std::uint64_t request_seed, const cost::CostParams& params,
                    const guest::ExecOptions& options, guest::TrackingFlags* tracking) {
  const guest::PhaseRange exec = spec.execution_phases();
  guest::Registers& regs = state.registers;
  if (regs.phase_index == spec.phases.size() && regs.step_index == 0 && !exec.empty()) {
    regs.phase_index = exec.begin;
  }
  if (regs.phase_index != exec.begin || regs.step_index != 0 ||
      !state.device.vsock_connected) {
    throw Error(ErrorCode::kNotRequestReady,
                fmt::format("instance of '{}' is at phase {} step {}{}, first Execution "
                            "phase is {}",
                            spec.name, regs.phase_index, regs.step_index,
                            state.device.vsock_connected ? "" : " without host channel",
                            exec.begin));
  }

  guest::TrackingFlags local;
  guest::TrackingFlags& flags = tracking ? *tracking : local;
  const FaultCounters before = state.memory.counters();
  const std::uint64_t compute =
      guest::run_phases(state, spec, exec, flags, request_seed, options);
  const FaultCounters& after = state.memory.counters();

  InvokeResult out;
  out.ledger.compute_us = cost::Micros(static_cast<std::int64_t>(compute));
  out.ledger.demand_pages_disk = after.demand_faults - before.demand_faults;
  out.ledger.cow_faults = after.cow_faults - before.cow_faults;
  out.exec_us = out.ledger.compute_us +
                params.lat_disk_fault_us *
                    static_cast<std::int64_t>(out.ledger.demand_pages_disk) +
                params.lat_mem_fault_us * static_cast<std::int64_t>(out.ledger.cow_faults);
  out.response_digest = regs.read_checksum;
  return out;
}

void materialize_page(const guest::GuestState& state, PageId page,
                      std::span<std::uint8_t> out) {
  state.memory.render(page, out);
}

std::vector<std::uint8_t> materialize_memory(const guest::GuestState& state) {
  const std::uint64_t n = state.memory.page_count();
  const std::uint32_t ps = state.memory.page_size();
  std::vector<std::uint8_t> out(n * ps);
  for (PageId p = 0; p < n; ++p) {
    materialize_page(state, p, std::span<std::uint8_t>(out.data() + p * ps, ps));
  }
  return out;
}

}  // namespace snaplab::restore
