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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"
#include "snaplab/cost/model.hpp"
#include "snaplab/cost/params.hpp"
#include "snaplab/guest/workload.hpp"
#include "snaplab/harness/artifacts.hpp"
#include "snaplab/harness/bench.hpp"
#include "snaplab/harness/report.hpp"
#include "snaplab/restore/instance.hpp"
#include "snaplab/restore/plan.hpp"
#include "snaplab/snapshot/io.hpp"
#include "snaplab/throughput/throughput.hpp"

namespace fs = std::filesystem;
using namespace snaplab;

namespace {

cost::CostParams params_or_default(const std::string& path) {
  return path.empty() ? cost::CostParams{} : cost::load_cost_params(path);
}

int cmd_gen_base(const std::string& spec_path, const std::string& dir) {
  const auto spec = guest::load_workload(spec_path);
  std::cout << harness::gen_base(spec, dir) << "\n";
  return 0;
}

int cmd_register(const std::string& spec_path, const std::string& dir, bool gen_base,
                 std::uint64_t ws_seed) {
  const auto spec = guest::load_workload(spec_path);
  const harness::Manifest m =
      harness::register_function(spec, dir, {ws_seed, gen_base});
  for (const auto& w : m.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << (harness::function_dir(dir, m.function) / "manifest.json").string() << "\n";
  return 0;
}

int cmd_invoke(const std::string& manifest, const std::string& strategy,
               std::optional<std::uint64_t> seed, bool jitter, std::uint64_t jitter_seed,
               const std::string& params_path) {
  const auto id = restore::parse_strategy(strategy);
  if (!id) throw Error(ErrorCode::kMalformedDocument, "unknown strategy '" + strategy + "'");
  const cost::CostParams params = params_or_default(params_path);
  params.validate();
  const harness::FunctionArtifacts art = harness::load_artifacts(manifest);
  const std::uint64_t request_seed = seed.value_or(art.ws.generation_request_seed);

  const auto plan = restore::plan_restore(*id, art.spec, art.inputs());
  auto booted = restore::boot(plan, art.spec, params);
  guest::ExecOptions opts;
  opts.jitter = jitter;
  opts.jitter_seed = jitter_seed;
  const auto result = restore::invoke(booted.state, art.spec, request_seed, params, opts);

  nlohmann::ordered_json j;
  j["function"] = art.spec.name;
  j["strategy"] = strategy;
  j["request_seed"] = request_seed;
  j["boot_us"] = cost::round_tenths(booted.boot_us).str();
  j["exec_us"] = cost::round_tenths(result.exec_us).str();
  j["e2e_us"] = cost::round_tenths(booted.boot_us + result.exec_us).str();
  j["eager_pages_disk"] = booted.ledger.eager_pages_disk;
  j["demand_pages_disk"] = result.ledger.demand_pages_disk;
  j["cow_faults"] = result.ledger.cow_faults;
  j["residual_init_us"] = cost::round_tenths(booted.ledger.residual_init_us).str();
  j["response_digest"] = hex64(result.response_digest);
  j["state_digest"] = hex64(guest::state_digest(booted.state));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out) {
  const harness::BenchConfig config = harness::load_bench_config(config_path);
  const auto records = harness::run_bench(config);
  fs::create_directories(out);
  snapshot::write_file_text(fs::path(out) / "records.json", harness::records_to_json(records));
  for (const auto& p : harness::emit_report(records, harness::ReportFormat::kCsv, out)) {
    std::cout << p.string() << "\n";
  }
  std::cout << (fs::path(out) / "records.json").string() << "\n";
  return 0;
}

int cmd_cow_ratio(const std::string& dir, const std::string& out,
                  const std::string& params_path) {
  const cost::CostParams params = params_or_default(params_path);
  std::vector<harness::CowRatioRow> rows;
  const auto manifests = harness::list_manifests(dir);
  if (manifests.empty()) {
    throw Error(ErrorCode::kMissingArtifact, "no registered functions under " + dir);
  }
  for (const auto& m : manifests) {
    const auto art = harness::load_artifacts(m);
    rows.push_back(harness::cow_ratio(art, art.ws.generation_request_seed, params));
  }
  const std::string csv = harness::cow_ratio_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    snapshot::write_file_text(out, csv);
  }
  return 0;
}

int cmd_throughput(const std::string& scenario_path, const std::string& out) {
  const auto scenario = throughput::load_scenario(scenario_path);
  const auto rows = throughput::sweep(scenario);
  fs::create_directories(out);
  const fs::path csv = fs::path(out) / "throughput.csv";
  snapshot::write_file_text(csv, throughput::throughput_csv(rows));
  const double crossover =
      throughput::find_crossover(scenario.regular, scenario.snapfaas, scenario.mix);
  std::cout << csv.string() << "\n";
  std::cout << fmt::format("slots regular={} snapfaas={} crossover={:.4f}\n",
                           scenario.regular.slots(), scenario.snapfaas.slots(), crossover);
  return 0;
}

int cmd_report(const std::string& records_path, const std::string& format,
               const std::string& out) {
  const auto records = harness::parse_records(snapshot::read_file_text(records_path));
  const auto fmt_id = format == "json" ? harness::ReportFormat::kJson : harness::ReportFormat::kCsv;
  const fs::path dir = out.empty() ? fs::path(records_path).parent_path() : fs::path(out);
  for (const auto& p : harness::emit_report(records, fmt_id, dir.empty() ? "." : dir)) {
    std::cout << p.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snaplab: snapshot-restore cold-start simulator"};
  app.require_subcommand(1);

  std::string spec_path, dir, manifest, strategy, config, out, scenario, records, params;
  std::string format = "csv";
  bool gen_base = false, jitter = false;
  std::uint64_t ws_seed = harness::kDefaultWsSeed, jitter_seed = 0;
  std::optional<std::uint64_t> seed;

  auto* gen = app.add_subcommand("gen-base", "Generate the language base snapshot for a workload");
  gen->add_option("spec", spec_path, "Workload JSON")->required();
  gen->add_option("dir", dir, "Artifact store")->required();

  auto* reg = app.add_subcommand("register", "Generate and store a function's artifacts");
  reg->add_option("spec", spec_path, "Workload JSON")->required();
  reg->add_option("dir", dir, "Artifact store")->required();
  reg->add_flag("--gen-base", gen_base, "Generate the base when the store has none");
  reg->add_option("--ws-seed", ws_seed, "Request seed of the working-set run");

  auto* inv = app.add_subcommand("invoke", "Cold-start one function under a strategy");
  inv->add_option("manifest", manifest, "manifest.json of a registered function")->required();
  inv->add_option("--strategy", strategy, "regular, full-demand, reap, seuss, snapfaas-, snapfaas")
      ->required();
  inv->add_option("--seed", seed, "Request seed (default: working-set seed)");
  inv->add_flag("--jitter", jitter, "Add seeded extra reads to execution");
  inv->add_option("--jitter-seed", jitter_seed, "Seed of the jitter reads");
  inv->add_option("--params", params, "Cost parameter JSON");

  auto* bench = app.add_subcommand("bench", "Run the strategy comparison");
  bench->add_option("config", config, "Bench config JSON")->required();
  bench->add_option("--out", out, "Output directory")->required();

  auto* cow = app.add_subcommand("cow-ratio", "Share of base pages copied on write");
  cow->add_option("dir", dir, "Artifact store")->required();
  cow->add_option("--out", out, "CSV file (default: stdout)");
  cow->add_option("--params", params, "Cost parameter JSON");

  auto* tput = app.add_subcommand("throughput", "Throughput sweep over cold-start fraction");
  tput->add_option("scenario", scenario, "Scenario JSON")->required();
  tput->add_option("--out", out, "Output directory")->required();

  auto* rep = app.add_subcommand("report", "Render tables from bench records");
  rep->add_option("records", records, "records.json")->required();
  rep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  rep->add_option("--out", out, "Output directory (default: next to records)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) return cmd_gen_base(spec_path, dir);
    if (*reg) return cmd_register(spec_path, dir, gen_base, ws_seed);
    if (*inv) return cmd_invoke(manifest, strategy, seed, jitter, jitter_seed, params);
    if (*bench) return cmd_bench(config, out);
    if (*cow) return cmd_cow_ratio(dir, out, params);
    if (*tput) return cmd_throughput(scenario, out);
    if (*rep) return cmd_report(records, format, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_status(ErrorCode::kIo);
  }
  return 0;
}
