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

#include "snaplab/harness/artifacts.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "snaplab/common/error.hpp"
#include "snaplab/snapshot/generate.hpp"
#include "snaplab/snapshot/io.hpp"

namespace snaplab::harness {
namespace fs = std::filesystem;
namespace {

using nlohmann::ordered_json;

template <typename S>
std::shared_ptr<const S> load_as(const fs::path& dir, snapshot::SnapshotKind kind) {
  snapshot::Snapshot snap = snapshot::read_snapshot(dir);
  if (snap.meta.kind != kind) {
    throw Error(ErrorCode::kCorruptFile,
                fmt::format("{} holds a {} snapshot, expected {}", dir.string(),
                            snapshot::snapshot_kind_name(snap.meta.kind),
                            snapshot::snapshot_kind_name(kind)));
  }
  auto out = std::make_shared<S>();
  static_cast<snapshot::Snapshot&>(*out) = std::move(snap);
  return out;
}

void expect_id(const std::string& manifest_id, const std::string& actual, std::string_view what) {
  if (manifest_id != actual) {
    throw Error(ErrorCode::kCorruptFile,
                fmt::format("manifest names {} '{}' but the store holds '{}'", what,
                            manifest_id, actual));
  }
}

std::string rel(const fs::path& p, const fs::path& store) {
  return p.lexically_relative(store).generic_string();
}

}  // namespace

FunctionArtifacts prepare_function(const guest::WorkloadSpec& spec, std::uint64_t ws_seed,
                                   std::shared_ptr<const snapshot::BaseSnapshot> base) {
  FunctionArtifacts a;
  a.spec = spec;
  a.base = base ? std::move(base)
                : std::make_shared<const snapshot::BaseSnapshot>(snapshot::generate_base(spec));
  a.diff = std::make_shared<const snapshot::DiffSnapshot>(snapshot::generate_diff(spec, *a.base));
  a.full = std::make_shared<const snapshot::FullSnapshot>(snapshot::generate_full(spec));
  a.ws = snapshot::generate_ws(spec, *a.base, *a.diff, ws_seed);
  a.full_ws = snapshot::generate_full_ws(spec, *a.full, ws_seed);
  return a;
}

std::string manifest_to_json(const Manifest& m) {
  ordered_json j;
  j["function"] = m.function;
  j["language_tag"] = m.language_tag;
  j["spec_path"] = m.spec_path;
  j["base_id"] = m.base_id;
  j["base_dir"] = m.base_dir;
  j["diff_id"] = m.diff_id;
  j["diff_dir"] = m.diff_dir;
  j["ws_path"] = m.ws_path;
  j["full_id"] = m.full_id;
  j["full_dir"] = m.full_dir;
  j["full_ws_path"] = m.full_ws_path;
  j["ws_request_seed"] = m.ws_request_seed;
  j["warnings"] = m.warnings;
  return j.dump(2) + "\n";
}

Manifest parse_manifest(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    Manifest m;
    m.function = j.at("function").get<std::string>();
    m.language_tag = j.at("language_tag").get<std::string>();
    m.spec_path = j.at("spec_path").get<std::string>();
    m.base_id = j.at("base_id").get<std::string>();
    m.base_dir = j.at("base_dir").get<std::string>();
    m.diff_id = j.at("diff_id").get<std::string>();
    m.diff_dir = j.at("diff_dir").get<std::string>();
    m.ws_path = j.at("ws_path").get<std::string>();
    m.full_id = j.at("full_id").get<std::string>();
    m.full_dir = j.at("full_dir").get<std::string>();
    m.full_ws_path = j.at("full_ws_path").get<std::string>();
    m.ws_request_seed = j.at("ws_request_seed").get<std::uint64_t>();
    m.warnings = j.value("warnings", std::vector<std::string>{});
    return m;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kCorruptFile, fmt::format("manifest: {}", e.what()));
  }
}

fs::path base_dir(const fs::path& store, std::string_view language_tag) {
  return store / "bases" / std::string(language_tag);
}

fs::path function_dir(const fs::path& store, std::string_view name) {
  return store / "functions" / std::string(name);
}

std::string gen_base(const guest::WorkloadSpec& spec, const fs::path& store) {
  const snapshot::BaseSnapshot base = snapshot::generate_base(spec);
  snapshot::write_snapshot(base, base_dir(store, spec.language_tag));
  return base.id();
}

Manifest register_function(const guest::WorkloadSpec& spec, const fs::path& store,
                           const RegisterOptions& options) {
  guest::validate_workload(spec);
  const fs::path bdir = base_dir(store, spec.language_tag);
  std::shared_ptr<const snapshot::BaseSnapshot> base;
  if (fs::exists(bdir / snapshot::kMetadataFileName)) {
    base = load_as<snapshot::BaseSnapshot>(bdir, snapshot::SnapshotKind::kBase);
  } else if (options.gen_base) {
    gen_base(spec, store);
    base = load_as<snapshot::BaseSnapshot>(bdir, snapshot::SnapshotKind::kBase);
  } else {
    throw Error(ErrorCode::kMissingArtifact,
                fmt::format("no base snapshot for language '{}' in {}; run gen-base first",
                            spec.language_tag, store.string()));
  }

  const FunctionArtifacts a = prepare_function(spec, options.ws_seed, base);
  const fs::path fdir = function_dir(store, spec.name);
  fs::create_directories(fdir);

  Manifest m;
  m.function = spec.name;
  m.language_tag = spec.language_tag;
  m.spec_path = rel(fdir / "spec.json", store);
  m.base_id = a.base->id();
  m.base_dir = rel(bdir, store);
  m.diff_id = a.diff->id();
  m.diff_dir = rel(fdir / "diff", store);
  m.ws_path = rel(fdir / "ws.json", store);
  m.full_id = a.full->id();
  m.full_dir = rel(fdir / "full", store);
  m.full_ws_path = rel(fdir / "full_ws.json", store);
  m.ws_request_seed = options.ws_seed;
  if (a.diff->pages.empty()) {
    m.warnings.push_back("FunctionInit dirtied no pages; the diff snapshot is empty");
  }
  if (a.ws.ws_page_ids.empty()) {
    m.warnings.push_back("Execution touched no diff pages; the working set is empty");
  }

  snapshot::write_file_text(store / m.spec_path, guest::workload_to_json(spec));
  snapshot::write_snapshot(*a.diff, store / m.diff_dir);
  snapshot::write_snapshot(*a.full, store / m.full_dir);
  snapshot::write_working_set(a.ws, store / m.ws_path);
  snapshot::write_working_set(a.full_ws, store / m.full_ws_path);
  snapshot::write_file_text(fdir / "manifest.json", manifest_to_json(m));
  return m;
}

FunctionArtifacts load_artifacts(const fs::path& manifest_path) {
  const Manifest m = parse_manifest(snapshot::read_file_text(manifest_path));
  // <store>/functions/<name>/manifest.json
  const fs::path store = manifest_path.parent_path().parent_path().parent_path();

  FunctionArtifacts a;
  a.spec = guest::parse_workload(snapshot::read_file_text(store / m.spec_path));
  a.base = load_as<snapshot::BaseSnapshot>(store / m.base_dir, snapshot::SnapshotKind::kBase);
  a.diff = load_as<snapshot::DiffSnapshot>(store / m.diff_dir, snapshot::SnapshotKind::kDiff);
  a.full = load_as<snapshot::FullSnapshot>(store / m.full_dir, snapshot::SnapshotKind::kFull);
  a.ws = snapshot::read_working_set(store / m.ws_path);
  a.full_ws = snapshot::read_working_set(store / m.full_ws_path);

  expect_id(m.base_id, a.base->id(), "base");
  expect_id(m.diff_id, a.diff->id(), "diff");
  expect_id(m.full_id, a.full->id(), "full snapshot");
  if (a.diff->meta.parent_base_id != a.base->id() ||
      a.base->meta.provenance.prefix_digest != guest::base_prefix_digest(a.spec)) {
    throw Error(ErrorCode::kBaseMismatch,
                fmt::format("diff '{}' of '{}' does not derive from base '{}'", a.diff->id(),
                            m.function, a.base->id()));
  }
  snapshot::validate_working_set(a.ws, *a.diff);
  snapshot::validate_working_set(a.full_ws, *a.full);
  return a;
}

std::vector<fs::path> list_manifests(const fs::path& store) {
  std::vector<fs::path> out;
  const fs::path root = store / "functions";
  if (!fs::is_directory(root)) return out;
  for (const auto& entry : fs::directory_iterator(root)) {
    const fs::path m = entry.path() / "manifest.json";
    if (fs::exists(m)) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace snaplab::harness
