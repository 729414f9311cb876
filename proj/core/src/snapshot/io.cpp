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

#include "snaplab/snapshot/io.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <json.hpp>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"

namespace snaplab::snapshot {
namespace {

using nlohmann::ordered_json;

constexpr std::size_t kHeaderBytes = 8 + 4 + 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::uint8_t* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorCode::kCorruptFile, what);
}

ordered_json net_to_json(const guest::NetConfig& n) {
  ordered_json j;
  j["local_ip"] = n.local_ip;
  j["gateway_ip"] = n.gateway_ip;
  j["guest_mac"] = n.guest_mac;
  j["bridge_mac"] = n.bridge_mac;
  return j;
}

SnapshotKind parse_kind(const std::string& s) {
  if (s == "base") return SnapshotKind::kBase;
  if (s == "diff") return SnapshotKind::kDiff;
  if (s == "full") return SnapshotKind::kFull;
  corrupt(fmt::format("unknown snapshot_kind '{}'", s));
}

ordered_json parse_json(std::string_view text, std::string_view what) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    corrupt(fmt::format("{} is not valid JSON: {}", what, e.what()));
  }
}

}  // namespace

std::vector<std::uint8_t> encode_page_file(const SparsePageFile& pages) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + pages.size() * (8 + pages.page_size()));
  out.insert(out.end(), kPageFileMagic.begin(), kPageFileMagic.end());
  put_u32(out, pages.page_size());
  put_u64(out, pages.size());
  for (std::size_t i = 0; i < pages.size(); ++i) {
    put_u64(out, pages.id(i));
    const auto bytes = pages.page(i);
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  return out;
}

SparsePageFile decode_page_file(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) {
    corrupt(fmt::format("page file of {} bytes is shorter than its header", bytes.size()));
  }
  const std::string_view magic(reinterpret_cast<const char*>(bytes.data()), 8);
  if (magic != kPageFileMagic) {
    if (magic.substr(0, 6) == kPageFileMagic.substr(0, 6)) {
      throw Error(ErrorCode::kVersionMismatch,
                  fmt::format("page file version '{}' is not supported", magic.substr(6)));
    }
    corrupt("bad page file magic");
  }
  const auto page_size = static_cast<std::uint32_t>(get_le(bytes.data() + 8, 4));
  const std::uint64_t count = get_le(bytes.data() + 12, 8);
  if (page_size == 0 || (page_size & (page_size - 1)) != 0) {
    corrupt(fmt::format("page size {} is not a power of two", page_size));
  }
  const std::uint64_t record = 8ULL + page_size;
  const std::uint64_t body = bytes.size() - kHeaderBytes;
  if (count > body / record || body != count * record) {
    corrupt(fmt::format("page file declares {} entries of {} bytes but carries {} bytes",
                        count, record, body));
  }
  SparsePageFile out(page_size);
  out.reserve(count);
  const std::uint8_t* p = bytes.data() + kHeaderBytes;
  for (std::uint64_t i = 0; i < count; ++i, p += record) {
    const PageId id = get_le(p, 8);
    if (!out.empty() && id <= out.ids().back()) {
      corrupt(fmt::format("page id {} at entry {} does not exceed {}", id, i,
                          out.ids().back()));
    }
    out.append(id, {p + 8, page_size});
  }
  return out;
}

std::string metadata_to_json(const SnapshotMetadata& m) {
  ordered_json j;
  j["format_version"] = kMetadataFormatVersion;
  j["id"] = m.id;
  j["snapshot_kind"] = snapshot_kind_name(m.kind);
  ordered_json regs;
  regs["phase_index"] = m.registers.phase_index;
  regs["step_index"] = m.registers.step_index;
  regs["read_checksum"] = m.registers.read_checksum;
  j["registers"] = regs;
  ordered_json dev;
  dev["appfs_mounted"] = m.device.appfs_mounted;
  dev["vsock_connected"] = m.device.vsock_connected;
  dev["net"] = net_to_json(m.device.net);
  j["device"] = dev;
  j["parent_base_id"] = m.parent_base_id ? ordered_json(*m.parent_base_id) : ordered_json();
  j["dirty_page_ids"] = m.dirty_page_ids;
  ordered_json prov;
  prov["language_tag"] = m.provenance.language_tag;
  prov["workload_seed"] = m.provenance.workload_seed;
  prov["memory_pages"] = m.provenance.memory_pages;
  prov["page_size"] = m.provenance.page_size;
  prov["prefix_digest"] = hex64(m.provenance.prefix_digest);
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

SnapshotMetadata parse_metadata(std::string_view text) {
  const ordered_json j = parse_json(text, "snapshot metadata");
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kMetadataFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  fmt::format("metadata format_version {} is not supported", version));
    }
    SnapshotMetadata m;
    m.id = j.at("id").get<std::string>();
    m.kind = parse_kind(j.at("snapshot_kind").get<std::string>());
    const auto& regs = j.at("registers");
    m.registers.phase_index = regs.at("phase_index").get<std::uint64_t>();
    m.registers.step_index = regs.at("step_index").get<std::uint64_t>();
    m.registers.read_checksum = regs.at("read_checksum").get<std::uint64_t>();
    const auto& dev = j.at("device");
    m.device.appfs_mounted = dev.at("appfs_mounted").get<bool>();
    m.device.vsock_connected = dev.at("vsock_connected").get<bool>();
    const auto& net = dev.at("net");
    m.device.net.local_ip = net.at("local_ip").get<std::string>();
    m.device.net.gateway_ip = net.at("gateway_ip").get<std::string>();
    m.device.net.guest_mac = net.at("guest_mac").get<std::string>();
    m.device.net.bridge_mac = net.at("bridge_mac").get<std::string>();
    if (!j.at("parent_base_id").is_null()) {
      m.parent_base_id = j.at("parent_base_id").get<std::string>();
    }
    m.dirty_page_ids = j.at("dirty_page_ids").get<std::vector<PageId>>();
    const auto& prov = j.at("provenance");
    m.provenance.language_tag = prov.at("language_tag").get<std::string>();
    m.provenance.workload_seed = prov.at("workload_seed").get<std::uint64_t>();
    m.provenance.memory_pages = prov.at("memory_pages").get<std::uint64_t>();
    m.provenance.page_size = prov.at("page_size").get<std::uint32_t>();
    m.provenance.prefix_digest =
        std::stoull(prov.at("prefix_digest").get<std::string>(), nullptr, 16);
    return m;
  } catch (const ordered_json::exception& e) {
    corrupt(fmt::format("snapshot metadata: {}", e.what()));
  } catch (const std::logic_error& e) {
    corrupt(fmt::format("snapshot metadata: {}", e.what()));
  }
}

std::string working_set_to_json(const WorkingSetFile& ws) {
  ordered_json j;
  j["diff_id"] = ws.diff_id;
  j["generation_request_seed"] = ws.generation_request_seed;
  j["ws_page_ids"] = ws.ws_page_ids;
  return j.dump(2) + "\n";
}

WorkingSetFile parse_working_set(std::string_view text) {
  const ordered_json j = parse_json(text, "working set");
  try {
    WorkingSetFile ws;
    ws.diff_id = j.at("diff_id").get<std::string>();
    ws.generation_request_seed = j.at("generation_request_seed").get<std::uint64_t>();
    ws.ws_page_ids = j.at("ws_page_ids").get<std::vector<PageId>>();
    for (std::size_t i = 1; i < ws.ws_page_ids.size(); ++i) {
      if (ws.ws_page_ids[i] <= ws.ws_page_ids[i - 1]) {
        corrupt(fmt::format("working set id {} out of order", ws.ws_page_ids[i]));
      }
    }
    return ws;
  } catch (const ordered_json::exception& e) {
    corrupt(fmt::format("working set: {}", e.what()));
  }
}

void write_snapshot(const Snapshot& snap, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  write_file_bytes(dir / kPageFileName, encode_page_file(snap.pages));
  write_file_text(dir / kMetadataFileName, metadata_to_json(snap.meta));
}

Snapshot read_snapshot(const std::filesystem::path& dir) {
  Snapshot snap;
  snap.meta = parse_metadata(read_file_text(dir / kMetadataFileName));
  snap.pages = decode_page_file(read_file_bytes(dir / kPageFileName));
  try {
    validate_snapshot(snap);
  } catch (const Error& e) {
    corrupt(fmt::format("{}: {}", dir.string(), e.what()));
  }
  const std::string digest = hex64(content_digest(snap.pages, snap.meta));
  if (snap.meta.id.size() < digest.size() ||
      snap.meta.id.compare(snap.meta.id.size() - digest.size(), digest.size(), digest) != 0) {
    corrupt(fmt::format("{}: content does not match snapshot id '{}'", dir.string(),
                        snap.meta.id));
  }
  return snap;
}

void write_working_set(const WorkingSetFile& ws, const std::filesystem::path& file) {
  write_file_text(file, working_set_to_json(ws));
}

WorkingSetFile read_working_set(const std::filesystem::path& file) {
  return parse_working_set(read_file_text(file));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    const ErrorCode code =
        std::filesystem::exists(file) ? ErrorCode::kIo : ErrorCode::kMissingArtifact;
    throw Error(code, fmt::format("cannot open {}", file.string()));
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_file_text(const std::filesystem::path& file) {
  const auto bytes = read_file_bytes(file);
  return {bytes.begin(), bytes.end()};
}

void write_file_bytes(const std::filesystem::path& file, std::span<const std::uint8_t> bytes) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", file.string()));
}

void write_file_text(const std::filesystem::path& file, std::string_view text) {
  write_file_bytes(file, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

}  // namespace snaplab::snapshot
