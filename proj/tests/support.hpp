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
#include <random>
#include <span>
#include <string>
#include <vector>

#include "snaplab/guest/workload.hpp"

namespace snaplab::testing {

inline std::filesystem::path scenario_dir() { return SNAPLAB_SCENARIO_DIR; }
inline std::filesystem::path corpus_index() { return scenario_dir() / "corpus" / "index.json"; }

// Reference splitmix64, written out from the published algorithm rather than
// shared with the library.
inline std::uint64_t ref_splitmix64(std::uint64_t state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t ref_fnv1a(std::span<const std::uint8_t> bytes,
                               std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t ref_fnv1a_u64(std::uint64_t h, std::uint64_t v) {
  std::uint8_t le[8];
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return ref_fnv1a(le, h);
}

inline std::vector<std::uint8_t> ref_page(std::uint64_t ws, std::uint64_t step, std::uint64_t page,
                                          std::uint32_t size) {
  std::vector<std::uint8_t> out(size);
  for (std::uint64_t off = 0; off < size; ++off) {
    out[off] = static_cast<std::uint8_t>(
        ref_splitmix64(ws ^ (step * 0x9E3779B97F4A7C15ULL) ^ (page * 0xBF58476D1CE4E5B9ULL) ^
                       (off * 0x94D049BB133111EBULL)));
  }
  return out;
}

// Fluent builder for small hand-written workloads.
class WorkloadBuilder {
 public:
  WorkloadBuilder(std::string name, std::string lang, std::uint64_t pages, std::uint64_t seed = 7) {
    spec_.name = std::move(name);
    spec_.language_tag = std::move(lang);
    spec_.memory_pages = pages;
    spec_.workload_seed = seed;
  }

  WorkloadBuilder& phase(std::string name, guest::Provenance p) {
    spec_.phases.push_back({std::move(name), p, {}});
    return *this;
  }
  WorkloadBuilder& write(guest::PageId start, std::uint64_t count, std::uint64_t step_seed) {
    spec_.phases.back().steps.push_back(guest::WriteStep{{start, count}, step_seed});
    return *this;
  }
  WorkloadBuilder& read(guest::PageId start, std::uint64_t count) {
    spec_.phases.back().steps.push_back(guest::ReadStep{{start, count}});
    return *this;
  }
  WorkloadBuilder& compute(std::uint64_t us) {
    spec_.phases.back().steps.push_back(guest::ComputeStep{us});
    return *this;
  }
  WorkloadBuilder& mount() {
    spec_.phases.back().steps.push_back(guest::MountAppFsStep{});
    return *this;
  }
  WorkloadBuilder& appfs(guest::PageId start, std::uint64_t count) {
    spec_.appfs_pages = guest::PageRange{start, count};
    return *this;
  }
  guest::WorkloadSpec build() const { return spec_; }

 private:
  guest::WorkloadSpec spec_;
};

// Kernel..Runtime prefix shared by the small test workloads: pages [0, 10)
// written, then an OsInit phase and a Runtime phase that rewrites page 5.
inline WorkloadBuilder small_prefix(std::string name, std::uint64_t pages = 256) {
  WorkloadBuilder b(std::move(name), "testlang", pages);
  b.phase("kernel", guest::Provenance::kKernel).write(0, 10, 11).compute(1000);
  b.phase("os", guest::Provenance::kOsInit).read(0, 4).compute(500);
  b.phase("runtime", guest::Provenance::kRuntime).write(20, 12, 13).write(5, 1, 14).compute(2000);
  return b;
}

// A complete small function: FunctionInit writes [100, 104) and rewrites
// base page 5; Execution reads diff pages 100-101 and base page 3, writes
// base page 25.
inline guest::WorkloadSpec small_function(std::string name = "small") {
  auto b = small_prefix(std::move(name));
  b.appfs(100, 4);
  b.phase("init", guest::Provenance::kFunctionInit)
      .mount()
      .write(100, 4, 21)
      .write(5, 1, 22)
      .compute(3000);
  b.phase("exec", guest::Provenance::kExecution)
      .read(100, 2)
      .read(3, 1)
      .write(25, 1, 31)
      .compute(700);
  return b.build();
}

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("snaplab-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace snaplab::testing
