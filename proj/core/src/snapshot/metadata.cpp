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

#include <algorithm>

#include <fmt/format.h>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"
#include "snaplab/snapshot/snapshot.hpp"

namespace snaplab::snapshot {
namespace {

[[noreturn]] void violation(const Snapshot& snap, const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation,
              fmt::format("{} snapshot '{}': {}", snapshot_kind_name(snap.meta.kind),
                          snap.id(), what));
}

}  // namespace

std::string_view snapshot_kind_name(SnapshotKind kind) {
  switch (kind) {
    case SnapshotKind::kBase: return "base";
    case SnapshotKind::kDiff: return "diff";
    case SnapshotKind::kFull: return "full";
  }
  return "unknown";
}

void validate_snapshot(const Snapshot& snap) {
  const SnapshotMetadata& m = snap.meta;
  if (snap.pages.page_size() != m.provenance.page_size) {
    violation(snap, "page file and provenance disagree on page size");
  }
  if (!snap.pages.empty() && snap.pages.ids().back() >= m.provenance.memory_pages) {
    violation(snap, "page id beyond guest memory");
  }
  if (m.device.vsock_connected) violation(snap, "vsock must not be captured");
  switch (m.kind) {
    case SnapshotKind::kBase:
      if (m.device.appfs_mounted) violation(snap, "AppFS mounted at base point");
      if (m.parent_base_id) violation(snap, "base snapshot has a parent");
      if (!m.dirty_page_ids.empty() && m.dirty_page_ids != snap.pages.ids()) {
        violation(snap, "dirty_page_ids disagree with page file");
      }
      break;
    case SnapshotKind::kDiff:
      if (!m.device.appfs_mounted) violation(snap, "AppFS not mounted at diff point");
      if (!m.parent_base_id) violation(snap, "diff snapshot without parent base");
      if (m.dirty_page_ids != snap.pages.ids()) {
        violation(snap, "dirty_page_ids disagree with page file");
      }
      break;
    case SnapshotKind::kFull:
      if (m.parent_base_id) violation(snap, "full snapshot has a parent");
      if (m.dirty_page_ids != snap.pages.ids()) {
        violation(snap, "dirty_page_ids disagree with page file");
      }
      break;
  }
}

void validate_working_set(const WorkingSetFile& ws, const Snapshot& target) {
  if (ws.diff_id != target.id()) {
    throw Error(ErrorCode::kForeignWorkingSet,
                fmt::format("working set belongs to '{}', not '{}'", ws.diff_id,
                            target.id()));
  }
  if (!std::is_sorted(ws.ws_page_ids.begin(), ws.ws_page_ids.end()) ||
      std::adjacent_find(ws.ws_page_ids.begin(), ws.ws_page_ids.end()) !=
          ws.ws_page_ids.end()) {
    throw Error(ErrorCode::kInvariantViolation, "working set ids not strictly increasing");
  }
  if (!std::includes(target.pages.ids().begin(), target.pages.ids().end(),
                     ws.ws_page_ids.begin(), ws.ws_page_ids.end())) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("working set of '{}' is not a subset of its dirty pages",
                            target.id()));
  }
}

std::uint64_t content_digest(const SparsePageFile& pages, const SnapshotMetadata& meta) {
  Fnv1a64 h;
  h.update(snapshot_kind_name(meta.kind));
  h.update_u64(pages.page_size());
  h.update_u64(pages.size());
  for (std::size_t i = 0; i < pages.size(); ++i) {
    h.update_u64(pages.id(i));
    h.update_u64(pages.digest(i));
  }
  h.update_u64(meta.registers.phase_index);
  h.update_u64(meta.registers.step_index);
  h.update_u64(meta.registers.read_checksum);
  h.update_byte(meta.device.appfs_mounted);
  h.update_byte(meta.device.vsock_connected);
  h.update(meta.device.net.local_ip);
  h.update(meta.device.net.gateway_ip);
  h.update(meta.device.net.guest_mac);
  h.update(meta.device.net.bridge_mac);
  h.update(meta.parent_base_id.value_or(""));
  h.update(meta.provenance.language_tag);
  h.update_u64(meta.provenance.workload_seed);
  h.update_u64(meta.provenance.memory_pages);
  h.update_u64(meta.provenance.prefix_digest);
  return h.value();
}

}  // namespace snaplab::snapshot
