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

#include "snaplab/harness/bench.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"
#include "snaplab/cost/model.hpp"
#include "snaplab/restore/instance.hpp"
#include "snaplab/restore/plan.hpp"
#include "snaplab/snapshot/io.hpp"

namespace snaplab::harness {
namespace fs = std::filesystem;
namespace {

using nlohmann::json;

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::uint64_t eager_bytes(const restore::RestorePlan& plan, const guest::WorkloadSpec& spec) {
  return plan.eager_page_ids.size() * spec.page_size;
}

// Fields that must not vary across rounds when jitter is off.
bool same_cell(const ReportRecord& a, const ReportRecord& b) {
  ReportRecord x = a;
  x.round = b.round;
  return x == b;
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const fs::path& index_path) {
  const std::string text = snapshot::read_file_text(index_path);
  try {
    const auto j = json::parse(text);
    std::vector<CorpusEntry> out;
    for (const auto& f : j.at("functions")) {
      out.push_back({f.at("name").get<std::string>(),
                     resolve(index_path.parent_path(), f.at("spec").get<std::string>()),
                     f.value("execution_class", std::string("short"))});
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument,
                fmt::format("corpus index {}: {}", index_path.string(), e.what()));
  }
}

BenchConfig parse_bench_config(std::string_view text, const fs::path& base_dir) {
  BenchConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, fmt::format("bench config: {}", e.what()));
  }
  try {
    c.functions = load_corpus(resolve(base_dir, j.at("corpus").get<std::string>()));
    if (j.contains("functions")) {
      const auto names = j.at("functions").get<std::vector<std::string>>();
      std::vector<CorpusEntry> picked;
      for (const auto& n : names) {
        auto it = std::find_if(c.functions.begin(), c.functions.end(),
                               [&](const CorpusEntry& e) { return e.name == n; });
        if (it == c.functions.end()) {
          throw Error(ErrorCode::kMissingArtifact,
                      fmt::format("function '{}' is not in the corpus", n));
        }
        picked.push_back(*it);
      }
      c.functions = std::move(picked);
    }
    if (j.contains("strategies")) {
      c.strategies.clear();
      for (const auto& s : j.at("strategies").get<std::vector<std::string>>()) {
        const auto id = restore::parse_strategy(s);
        if (!id) {
          throw Error(ErrorCode::kMalformedDocument, fmt::format("unknown strategy '{}'", s));
        }
        c.strategies.push_back(*id);
      }
    }
    c.rounds = j.value("rounds", 100U);
    if (j.contains("params")) {
      const auto& p = j.at("params");
      c.params = p.is_string() ? cost::load_cost_params(resolve(base_dir, p.get<std::string>()))
                               : cost::parse_cost_params(p.dump());
    }
    c.ws_seed = j.value("ws_seed", kDefaultWsSeed);
    if (j.contains("request_seed") && !j.at("request_seed").is_null()) {
      c.request_seed = j.at("request_seed").get<std::uint64_t>();
    }
    c.jitter = j.value("jitter", false);
    c.jitter_seed = j.value("jitter_seed", std::uint64_t{0});
    if (j.contains("store") && !j.at("store").is_null()) {
      c.store = resolve(base_dir, j.at("store").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, fmt::format("bench config: {}", e.what()));
  }
  if (c.rounds < 1) throw Error(ErrorCode::kInvariantViolation, "rounds must be at least 1");
  return c;
}

BenchConfig load_bench_config(const fs::path& path) {
  return parse_bench_config(snapshot::read_file_text(path), path.parent_path());
}

std::vector<ReportRecord> run_bench(const BenchConfig& config) {
  config.params.validate();
  if (config.rounds < 1) throw Error(ErrorCode::kInvariantViolation, "rounds must be at least 1");
  const std::uint64_t seed = config.effective_request_seed();
  std::vector<ReportRecord> records;
  std::map<std::string, std::shared_ptr<const snapshot::BaseSnapshot>> bases;

  for (const CorpusEntry& entry : config.functions) {
    FunctionArtifacts art;
    if (config.store) {
      art = load_artifacts(function_dir(*config.store, entry.name) / "manifest.json");
    } else {
      const guest::WorkloadSpec spec = guest::load_workload(entry.spec_path);
      auto& base = bases[spec.language_tag];
      art = prepare_function(spec, config.ws_seed, base);
      base = art.base;
    }
    const guest::WorkloadSpec& spec = art.spec;
    const restore::PlanInputs inputs = art.inputs();

    std::vector<restore::RestorePlan> plans;
    for (restore::StrategyId s : config.strategies) {
      plans.push_back(restore::plan_restore(s, spec, inputs));
    }

    restore::BootResult warm = restore::boot(
        restore::plan_restore(restore::StrategyId::kRegular, spec, inputs), spec, config.params);
    restore::invoke(warm.state, spec, seed, config.params);

    const std::size_t first = records.size();
    for (std::uint32_t round = 0; round < config.rounds; ++round) {
      guest::ExecOptions opts;
      opts.jitter = config.jitter;
      opts.jitter_seed = config.jitter_seed ^ splitmix64(round);
      const restore::InvokeResult w =
          restore::invoke(warm.state, spec, seed, config.params, opts);

      for (std::size_t si = 0; si < plans.size(); ++si) {
        const restore::RestorePlan& plan = plans[si];
        const std::string_view name = restore::strategy_name(plan.strategy);
        restore::BootResult b = restore::boot(plan, spec, config.params);
        const restore::InvokeResult r =
            restore::invoke(b.state, spec, seed, config.params, opts);
        cost::EventLedger ledger = b.ledger;
        ledger += r.ledger;
        const cost::LatencyBreakdown bd =
            cost::breakdown(ledger, w.exec_us, b.boot_us, r.exec_us, config.params, name);

        ReportRecord rec;
        rec.function = spec.name;
        rec.language_tag = spec.language_tag;
        rec.execution_class = entry.execution_class;
        rec.strategy = std::string(name);
        rec.round = round;
        rec.boot_us = cost::round_tenths(b.boot_us);
        rec.exec_us = cost::round_tenths(r.exec_us);
        rec.e2e_us = cost::round_tenths(b.boot_us + r.exec_us);
        rec.warm_exec_us = cost::round_tenths(w.exec_us);
        rec.a_us = cost::round_tenths(bd.a_us);
        rec.b_us = cost::round_tenths(bd.b_us);
        rec.c_us = cost::round_tenths(bd.c_us);
        rec.d_us = cost::round_tenths(bd.d_us);
        rec.eager_bytes = eager_bytes(plan, spec);
        rec.demand_pages = ledger.demand_pages_disk;
        rec.cow_faults = ledger.cow_faults;
        rec.full_snapshot_bytes = art.full->pages.payload_bytes();
        rec.response_digest = r.response_digest;

        if (!config.jitter && round > 0) {
          const ReportRecord& ref = records[first + si];
          if (!same_cell(ref, rec)) {
            throw Error(ErrorCode::kDeterminismViolation,
                        fmt::format("{} under {}: round {} differs from round 0", spec.name,
                                    name, round));
          }
        }
        records.push_back(std::move(rec));
      }
    }
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const ReportRecord& a, const ReportRecord& b) {
                     const auto sa = restore::parse_strategy(a.strategy);
                     const auto sb = restore::parse_strategy(b.strategy);
                     return std::tie(a.function, sa, a.round) < std::tie(b.function, sb, b.round);
                   });
  return records;
}

}  // namespace snaplab::harness
