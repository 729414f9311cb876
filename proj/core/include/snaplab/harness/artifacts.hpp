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
#include <memory>
#include <string>
#include <vector>

#include "snaplab/guest/workload.hpp"
#include "snaplab/restore/plan.hpp"
#include "snaplab/snapshot/snapshot.hpp"

namespace snaplab::harness {

inline constexpr std::uint64_t kDefaultWsSeed = 1;

// Everything the six strategies need to restore one function.
struct FunctionArtifacts {
  guest::WorkloadSpec spec;
  std::shared_ptr<const snapshot::BaseSnapshot> base;
  std::shared_ptr<const snapshot::DiffSnapshot> diff;
  std::shared_ptr<const snapshot::FullSnapshot> full;
  snapshot::WorkingSetFile ws;
  snapshot::WorkingSetFile full_ws;

  restore::PlanInputs inputs() const {
    return {base, diff, &ws, full, &full_ws};
  }
};

// Generates diff, full snapshot and both working sets in memory. Reuses
// `base` when given, otherwise generates one.
FunctionArtifacts prepare_function(const guest::WorkloadSpec& spec, std::uint64_t ws_seed,
                                   std::shared_ptr<const snapshot::BaseSnapshot> base = nullptr);

// manifest.json of a registered function. Paths are relative to the store
// root.
struct Manifest {
  std::string function;
  std::string language_tag;
  std::string spec_path;
  std::string base_id;
  std::string base_dir;
  std::string diff_id;
  std::string diff_dir;
  std::string ws_path;
  std::string full_id;
  std::string full_dir;
  std::string full_ws_path;
  std::uint64_t ws_request_seed = kDefaultWsSeed;
  std::vector<std::string> warnings;

  bool operator==(const Manifest&) const = default;
};

std::string manifest_to_json(const Manifest& m);
Manifest parse_manifest(std::string_view json_text);

struct RegisterOptions {
  std::uint64_t ws_seed = kDefaultWsSeed;
  // Generate the language base when the store has none.
  bool gen_base = false;
};

// Store layout:
//   <store>/bases/<language_tag>/{pages.snap,meta.json}
//   <store>/functions/<name>/{manifest.json,spec.json,diff/,full/,ws.json,full_ws.json}
std::filesystem::path base_dir(const std::filesystem::path& store, std::string_view language_tag);
std::filesystem::path function_dir(const std::filesystem::path& store, std::string_view name);

// Generates and stores the base for the spec's language tag; returns its id.
// Overwrites an existing base of that tag.
std::string gen_base(const guest::WorkloadSpec& spec, const std::filesystem::path& store);

// Registers a function: loads (or with gen_base, creates) the language base,
// generates diff, full snapshot and working sets, writes them and the
// manifest. Idempotent for identical inputs. Throws BaseMismatch when the
// stored base has another runtime prefix and MissingArtifact when there is
// no base and gen_base is off.
Manifest register_function(const guest::WorkloadSpec& spec, const std::filesystem::path& store,
                           const RegisterOptions& options = {});

// Loads the artifacts named by a manifest and cross-validates them.
FunctionArtifacts load_artifacts(const std::filesystem::path& manifest_path);

// Sorted manifest paths under <store>/functions.
std::vector<std::filesystem::path> list_manifests(const std::filesystem::path& store);

}  // namespace snaplab::harness
