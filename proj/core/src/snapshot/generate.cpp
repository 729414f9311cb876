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

#include "snaplab/snapshot/generate.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"
#include "snaplab/guest/interpreter.hpp"

namespace snaplab::snapshot {
namespace {

SnapshotProvenance provenance_of(const guest::WorkloadSpec& spec) {
  return {spec.language_tag, spec.workload_seed, spec.memory_pages, spec.page_size,
          guest::base_prefix_digest(spec)};
}

SparsePageFile capture_pages(const guest::GuestState& state,
                             const std::vector<PageId>& ids) {
  SparsePageFile out(state.memory.page_size());
  out.reserve(ids.size());
  std::vector<std::uint8_t> scratch(state.memory.page_size());
  for (PageId p : ids) {
    state.memory.render(p, scratch);
    out.append(p, scratch);
  }
  return out;
}

template <typename S>
S capture(const guest::GuestState& state, const guest::WorkloadSpec& spec,
          const std::vector<PageId>& dirty, SnapshotKind kind,
          std::optional<std::string> parent, const std::string& id_prefix) {
  S snap;
  snap.pages = capture_pages(state, dirty);
  snap.meta.kind = kind;
  snap.meta.registers = state.registers;
  snap.meta.device = state.device;
  snap.meta.device.vsock_connected = false;
  snap.meta.parent_base_id = std::move(parent);
  if (kind != SnapshotKind::kBase) snap.meta.dirty_page_ids = dirty;
  snap.meta.provenance = provenance_of(spec);
  snap.meta.id = id_prefix + hex64(content_digest(snap.pages, snap.meta));
  validate_snapshot(snap);
  return snap;
}

void check_base(const guest::WorkloadSpec& spec, const BaseSnapshot& base) {
  const SnapshotProvenance want = provenance_of(spec);
  if (base.meta.kind != SnapshotKind::kBase || base.meta.provenance != want) {
    throw Error(ErrorCode::kBaseMismatch,
                fmt::format("base '{}' was not generated from the runtime prefix of '{}'",
                            base.id(), spec.name));
  }
}

void install_restored(guest::GuestState& st, const Snapshot& snap, bool on_demand) {
  const SparsePageFile& pages = snap.pages;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (on_demand) {
      st.memory.install_demand(pages.id(i), pages.page(i).data(), pages.digest(i));
    } else {
      st.memory.install_shared(pages.id(i), pages.page(i).data(), pages.digest(i));
    }
  }
}

WorkingSetFile record_ws(guest::GuestState& st, const guest::WorkloadSpec& spec,
                         const Snapshot& target, std::uint64_t request_seed) {
  st.registers = target.meta.registers;
  st.device = target.meta.device;
  st.device.vsock_connected = true;
  guest::TrackingFlags tracking;
  tracking.access_tracking = true;
  guest::run_phases(st, spec, spec.execution_phases(), tracking, request_seed);

  WorkingSetFile ws;
  ws.diff_id = target.id();
  ws.generation_request_seed = request_seed;
  for (PageId p : target.pages.ids()) {
    if (tracking.accessed_set.test(p)) ws.ws_page_ids.push_back(p);
  }
  validate_working_set(ws, target);
  return ws;
}

}  // namespace

BaseSnapshot generate_base(const guest::WorkloadSpec& spec) {
  guest::validate_workload(spec);
  const guest::PhaseRange range = spec.base_phases();
  const bool has_runtime =
      std::any_of(spec.phases.begin() + range.begin, spec.phases.begin() + range.end,
                  [](const guest::Phase& p) {
                    return p.provenance == guest::Provenance::kRuntime;
                  });
  if (!has_runtime) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("workload '{}' has no Runtime phase to snapshot after",
                            spec.name));
  }
  guest::GuestState st = guest::fresh_state(spec.workload_seed, spec.memory_pages,
                                            spec.page_size);
  guest::TrackingFlags tracking;
  tracking.dirty_tracking = true;
  guest::run_phases(st, spec, range, tracking, 0);
  return capture<BaseSnapshot>(st, spec, tracking.dirty_set.ids(), SnapshotKind::kBase,
                               std::nullopt, spec.language_tag + "-");
}

DiffSnapshot generate_diff(const guest::WorkloadSpec& spec, const BaseSnapshot& base) {
  guest::validate_workload(spec);
  check_base(spec, base);
  guest::GuestState st = guest::fresh_state(spec.workload_seed, spec.memory_pages,
                                            spec.page_size);
  for (std::size_t i = 0; i < base.pages.size(); ++i) {
    st.memory.install_private(base.pages.id(i),
                              guest::PageContent::from_storage(base.pages.page(i).data(),
                                                               base.pages.digest(i)));
  }
  st.registers = base.meta.registers;
  st.device = base.meta.device;
  guest::TrackingFlags tracking;
  tracking.dirty_tracking = true;
  guest::run_phases(st, spec, spec.function_init_phases(), tracking, 0);
  return capture<DiffSnapshot>(st, spec, tracking.dirty_set.ids(), SnapshotKind::kDiff,
                               base.id(), spec.name + "-");
}

FullSnapshot generate_full(const guest::WorkloadSpec& spec) {
  guest::validate_workload(spec);
  guest::GuestState st = guest::fresh_state(spec.workload_seed, spec.memory_pages,
                                            spec.page_size);
  guest::TrackingFlags tracking;
  tracking.dirty_tracking = true;
  guest::run_phases(st, spec, {0, spec.function_init_phases().end}, tracking, 0);
  return capture<FullSnapshot>(st, spec, tracking.dirty_set.ids(), SnapshotKind::kFull,
                               std::nullopt, spec.name + "-full-");
}

WorkingSetFile generate_ws(const guest::WorkloadSpec& spec, const BaseSnapshot& base,
                           const DiffSnapshot& diff, std::uint64_t request_seed) {
  check_base(spec, base);
  if (diff.meta.parent_base_id != base.id()) {
    throw Error(ErrorCode::kBaseMismatch,
                fmt::format("diff '{}' does not derive from base '{}'", diff.id(), base.id()));
  }
  guest::GuestState st = guest::fresh_state(spec.workload_seed, spec.memory_pages,
                                            spec.page_size);
  install_restored(st, base, false);
  install_restored(st, diff, true);
  return record_ws(st, spec, diff, request_seed);
}

WorkingSetFile generate_full_ws(const guest::WorkloadSpec& spec, const FullSnapshot& full,
                                std::uint64_t request_seed) {
  guest::GuestState st = guest::fresh_state(spec.workload_seed, spec.memory_pages,
                                            spec.page_size);
  install_restored(st, full, true);
  return record_ws(st, spec, full, request_seed);
}

}  // namespace snaplab::snapshot
