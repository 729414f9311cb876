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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snaplab/guest/state.hpp"
#include "snaplab/snapshot/sparse_page_file.hpp"

namespace snaplab::snapshot {

inline constexpr int kMetadataFormatVersion = 1;

enum class SnapshotKind : std::uint8_t { kBase, kDiff, kFull };
enum class ResidentTier : std::uint8_t { kMemory, kDisk };

std::string_view snapshot_kind_name(SnapshotKind kind);

// What a snapshot was generated from; a diff may only be layered on a base
// whose provenance matches the function's own Kernel..Runtime prefix.
struct SnapshotProvenance {
  std::string language_tag;
  std::uint64_t workload_seed = 0;
  std::uint64_t memory_pages = 0;
  std::uint32_t page_size = guest::kDefaultPageSize;
  std::uint64_t prefix_digest = 0;

  bool operator==(const SnapshotProvenance&) const = default;
};

// Non-memory state, stored as JSON beside the page file.
struct SnapshotMetadata {
  std::string id;
  SnapshotKind kind = SnapshotKind::kBase;
  guest::Registers registers;
  guest::DeviceState device;
  std::optional<std::string> parent_base_id;
  // Diff and full snapshots: explicit record of the pages in the page file.
  std::vector<PageId> dirty_page_ids;
  SnapshotProvenance provenance;

  bool operator==(const SnapshotMetadata&) const = default;
};

struct Snapshot {
  SparsePageFile pages;
  SnapshotMetadata meta;

  const std::string& id() const { return meta.id; }
  ResidentTier resident_tier() const {
    return meta.kind == SnapshotKind::kBase ? ResidentTier::kMemory
                                            : ResidentTier::kDisk;
  }
  bool operator==(const Snapshot&) const = default;
};

// Memory, registers and devices right after language-runtime initialization,
// before any function-specific code; kept in memory and shared copy-on-write.
struct BaseSnapshot : Snapshot {};
// Pages dirtied by function initialization on top of a base; kept on disk.
struct DiffSnapshot : Snapshot {};
// Everything dirtied from kernel boot through function initialization, for
// strategies that do not layer (kept on disk).
struct FullSnapshot : Snapshot {};

// Pages of a disk-resident snapshot touched during one recorded execution.
// `diff_id` names the snapshot the ids refer to.
struct WorkingSetFile {
  std::string diff_id;
  std::vector<PageId> ws_page_ids;
  std::uint64_t generation_request_seed = 0;

  bool operator==(const WorkingSetFile&) const = default;
};

// Checks the type invariants of `snap` against its declared kind. Throws
// Error{kInvariantViolation}.
void validate_snapshot(const Snapshot& snap);
void validate_working_set(const WorkingSetFile& ws, const Snapshot& target);

// Content digest over pages, registers, devices, parent and provenance.
std::uint64_t content_digest(const SparsePageFile& pages, const SnapshotMetadata& meta);

}  // namespace snaplab::snapshot
