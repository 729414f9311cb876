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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snaplab/snapshot/snapshot.hpp"

namespace snaplab::snapshot {

inline constexpr std::string_view kPageFileMagic = "SNAPPG01";
inline constexpr std::string_view kPageFileName = "pages.snap";
inline constexpr std::string_view kMetadataFileName = "meta.json";

// Binary sparse page file, little-endian: magic, u32 page size, u64 entry
// count, then (u64 page id, page bytes) records with increasing ids.
std::vector<std::uint8_t> encode_page_file(const SparsePageFile& pages);
// Throws CorruptFile on bad magic, short or long input, wrong page size or
// unordered ids; VersionMismatch on a known magic with another version.
SparsePageFile decode_page_file(std::span<const std::uint8_t> bytes);

std::string metadata_to_json(const SnapshotMetadata& meta);
SnapshotMetadata parse_metadata(std::string_view json_text);

std::string working_set_to_json(const WorkingSetFile& ws);
WorkingSetFile parse_working_set(std::string_view json_text);

// <dir>/pages.snap and <dir>/meta.json.
void write_snapshot(const Snapshot& snap, const std::filesystem::path& dir);
Snapshot read_snapshot(const std::filesystem::path& dir);

void write_working_set(const WorkingSetFile& ws, const std::filesystem::path& file);
WorkingSetFile read_working_set(const std::filesystem::path& file);

// Whole-file helpers; throw Io (or MissingArtifact when absent).
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& file);
std::string read_file_text(const std::filesystem::path& file);
void write_file_bytes(const std::filesystem::path& file, std::span<const std::uint8_t> bytes);
void write_file_text(const std::filesystem::path& file, std::string_view text);

}  // namespace snaplab::snapshot
