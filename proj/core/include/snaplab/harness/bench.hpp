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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snaplab/cost/duration.hpp"
#include "snaplab/cost/params.hpp"
#include "snaplab/harness/artifacts.hpp"
#include "snaplab/restore/strategy.hpp"

namespace snaplab::harness {

// One function of a corpus index.
struct CorpusEntry {
  std::string name;
  std::filesystem::path spec_path;
  std::string execution_class;  // "short" or "long"
};

// index.json: {"functions": [{"name", "spec", "execution_class"}, ...]};
// spec paths are relative to the index file.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& index_path);

struct BenchConfig {
  std::vector<CorpusEntry> functions;
  std::vector<restore::StrategyId> strategies{restore::kAllStrategies.begin(),
                                              restore::kAllStrategies.end()};
  std::uint32_t rounds = 100;
  cost::CostParams params;
  std::uint64_t ws_seed = kDefaultWsSeed;
  // Defaults to the working-set generation seed.
  std::optional<std::uint64_t> request_seed;
  bool jitter = false;
  std::uint64_t jitter_seed = 0;
  // Registered artifacts are loaded from here when set; otherwise they are
  // generated in memory.
  std::optional<std::filesystem::path> store;

  std::uint64_t effective_request_seed() const { return request_seed.value_or(ws_seed); }
};

// {"corpus": "<index.json>", "functions": [names]?, "strategies": [names]?,
//  "rounds": n, "params": {...} | "<file>", "ws_seed": n, "request_seed": n?,
//  "jitter": bool, "jitter_seed": n, "store": "<dir>"?}
// Relative paths resolve against `base_dir`.
BenchConfig parse_bench_config(std::string_view json_text,
                               const std::filesystem::path& base_dir);
BenchConfig load_bench_config(const std::filesystem::path& path);

struct ReportRecord {
  std::string function;
  std::string language_tag;
  std::string execution_class;
  std::string strategy;
  std::uint32_t round = 0;
  cost::TenthMicros boot_us;
  cost::TenthMicros exec_us;
  cost::TenthMicros e2e_us;
  cost::TenthMicros warm_exec_us;
  cost::TenthMicros a_us;
  cost::TenthMicros b_us;
  cost::TenthMicros c_us;
  cost::TenthMicros d_us;
  std::uint64_t eager_bytes = 0;
  std::uint64_t demand_pages = 0;
  std::uint64_t cow_faults = 0;
  std::uint64_t full_snapshot_bytes = 0;
  std::uint64_t response_digest = 0;

  bool operator==(const ReportRecord&) const = default;
};

// For each function, strategy and round: a warm re-invoke of a persistent
// regular instance, then a fresh boot and invoke under the strategy. With
// jitter off every round of a cell must match the first, else
// DeterminismViolation. Records are sorted by function, strategy, round.
std::vector<ReportRecord> run_bench(const BenchConfig& config);

}  // namespace snaplab::harness
