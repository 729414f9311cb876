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

#include "snaplab/harness/report.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"
#include "snaplab/restore/instance.hpp"
#include "snaplab/snapshot/io.hpp"

namespace snaplab::harness {
namespace fs = std::filesystem;
namespace {

using nlohmann::ordered_json;
using cost::Micros;
using cost::TenthMicros;

// Records of one (function, strategy) cell, in input order.
struct Cell {
  const ReportRecord* first = nullptr;
  std::uint64_t rounds = 0;
  std::int64_t boot = 0, exec = 0, e2e = 0, a = 0, b = 0, c = 0, d = 0;

  TenthMicros mean(std::int64_t sum) const {
    return cost::round_tenths(Micros(sum, 10 * static_cast<std::int64_t>(rounds)));
  }
  Micros mean_exact(std::int64_t sum) const {
    return Micros(sum, 10 * static_cast<std::int64_t>(rounds));
  }
};

std::vector<Cell> cells(const std::vector<ReportRecord>& records) {
  std::vector<Cell> out;
  for (const ReportRecord& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Cell& c) {
      return c.first->function == r.function && c.first->strategy == r.strategy;
    });
    if (it == out.end()) {
      out.push_back({&r});
      it = out.end() - 1;
    }
    ++it->rounds;
    it->boot += r.boot_us.value;
    it->exec += r.exec_us.value;
    it->e2e += r.e2e_us.value;
    it->a += r.a_us.value;
    it->b += r.b_us.value;
    it->c += r.c_us.value;
    it->d += r.d_us.value;
  }
  return out;
}

const Cell* snapfaas_cell(const std::vector<Cell>& all, const std::string& function) {
  for (const Cell& c : all) {
    if (c.first->function == function && c.first->strategy == "snapfaas") return &c;
  }
  return nullptr;
}

std::string normalized(const std::vector<Cell>& all, const Cell& c) {
  const Cell* ref = snapfaas_cell(all, c.first->function);
  if (ref == nullptr || ref->e2e == 0) return "";
  const Micros ratio = c.mean_exact(c.e2e) / ref->mean_exact(ref->e2e);
  // Three decimals, half-up.
  const std::int64_t thousandths = cost::round_tenths(ratio * 100).value;
  return fmt::format("{}.{:03d}", thousandths / 1000, thousandths % 1000);
}

void require_records(const std::vector<ReportRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::kInvariantViolation, "no records to report");
}

}  // namespace

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string records_to_json(const std::vector<ReportRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const ReportRecord& r : records) {
    ordered_json j;
    j["function"] = r.function;
    j["language_tag"] = r.language_tag;
    j["execution_class"] = r.execution_class;
    j["strategy"] = r.strategy;
    j["round"] = r.round;
    j["boot_tenth_us"] = r.boot_us.value;
    j["exec_tenth_us"] = r.exec_us.value;
    j["e2e_tenth_us"] = r.e2e_us.value;
    j["warm_exec_tenth_us"] = r.warm_exec_us.value;
    j["a_tenth_us"] = r.a_us.value;
    j["b_tenth_us"] = r.b_us.value;
    j["c_tenth_us"] = r.c_us.value;
    j["d_tenth_us"] = r.d_us.value;
    j["eager_bytes"] = r.eager_bytes;
    j["demand_pages"] = r.demand_pages;
    j["cow_faults"] = r.cow_faults;
    j["full_snapshot_bytes"] = r.full_snapshot_bytes;
    j["response_digest"] = hex64(r.response_digest);
    arr.push_back(std::move(j));
  }
  ordered_json doc;
  doc["records"] = std::move(arr);
  return doc.dump(1) + "\n";
}

std::vector<ReportRecord> parse_records(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    std::vector<ReportRecord> out;
    for (const auto& j : doc.at("records")) {
      ReportRecord r;
      r.function = j.at("function").get<std::string>();
      r.language_tag = j.at("language_tag").get<std::string>();
      r.execution_class = j.at("execution_class").get<std::string>();
      r.strategy = j.at("strategy").get<std::string>();
      r.round = j.at("round").get<std::uint32_t>();
      r.boot_us.value = j.at("boot_tenth_us").get<std::int64_t>();
      r.exec_us.value = j.at("exec_tenth_us").get<std::int64_t>();
      r.e2e_us.value = j.at("e2e_tenth_us").get<std::int64_t>();
      r.warm_exec_us.value = j.at("warm_exec_tenth_us").get<std::int64_t>();
      r.a_us.value = j.at("a_tenth_us").get<std::int64_t>();
      r.b_us.value = j.at("b_tenth_us").get<std::int64_t>();
      r.c_us.value = j.at("c_tenth_us").get<std::int64_t>();
      r.d_us.value = j.at("d_tenth_us").get<std::int64_t>();
      r.eager_bytes = j.at("eager_bytes").get<std::uint64_t>();
      r.demand_pages = j.at("demand_pages").get<std::uint64_t>();
      r.cow_faults = j.at("cow_faults").get<std::uint64_t>();
      r.full_snapshot_bytes = j.at("full_snapshot_bytes").get<std::uint64_t>();
      r.response_digest = std::stoull(j.at("response_digest").get<std::string>(), nullptr, 16);
      out.push_back(std::move(r));
    }
    return out;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, fmt::format("records: {}", e.what()));
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::kMalformedDocument, fmt::format("records: {}", e.what()));
  }
}

std::string latency_csv(const std::vector<ReportRecord>& records) {
  const auto all = cells(records);
  std::string out =
      "function,language_tag,execution_class,strategy,rounds,boot_us,exec_us,e2e_us,"
      "normalized_e2e\r\n";
  for (const Cell& c : all) {
    const ReportRecord& r = *c.first;
    out += fmt::format("{},{},{},{},{},{},{},{},{}\r\n", csv_field(r.function),
                       csv_field(r.language_tag), csv_field(r.execution_class),
                       csv_field(r.strategy), c.rounds, c.mean(c.boot).str(),
                       c.mean(c.exec).str(), c.mean(c.e2e).str(), normalized(all, c));
  }
  return out;
}

std::string breakdown_csv(const std::vector<ReportRecord>& records) {
  std::string out = "function,language_tag,strategy,A_ms,B_ms,C_ms,D_ms\r\n";
  for (const Cell& c : cells(records)) {
    const ReportRecord& r = *c.first;
    out += fmt::format("{},{},{},{},{},{},{}\r\n", csv_field(r.function),
                       csv_field(r.language_tag), csv_field(r.strategy),
                       cost::format_ms_tenths(c.mean_exact(c.a)),
                       cost::format_ms_tenths(c.mean_exact(c.b)),
                       cost::format_ms_tenths(c.mean_exact(c.c)),
                       cost::format_ms_tenths(c.mean_exact(c.d)));
  }
  return out;
}

std::string eager_sizes_csv(const std::vector<ReportRecord>& records) {
  std::string out = "function,language_tag,strategy,eager_bytes,full_snapshot_bytes\r\n";
  for (const Cell& c : cells(records)) {
    const ReportRecord& r = *c.first;
    out += fmt::format("{},{},{},{},{}\r\n", csv_field(r.function), csv_field(r.language_tag),
                       csv_field(r.strategy), r.eager_bytes, r.full_snapshot_bytes);
  }
  return out;
}

std::string report_json(const std::vector<ReportRecord>& records) {
  const auto all = cells(records);
  ordered_json latency = ordered_json::array();
  ordered_json breakdown = ordered_json::array();
  ordered_json sizes = ordered_json::array();
  for (const Cell& c : all) {
    const ReportRecord& r = *c.first;
    ordered_json l;
    l["function"] = r.function;
    l["language_tag"] = r.language_tag;
    l["execution_class"] = r.execution_class;
    l["strategy"] = r.strategy;
    l["rounds"] = c.rounds;
    l["boot_us"] = c.mean(c.boot).str();
    l["exec_us"] = c.mean(c.exec).str();
    l["e2e_us"] = c.mean(c.e2e).str();
    l["normalized_e2e"] = normalized(all, c);
    latency.push_back(std::move(l));

    ordered_json b;
    b["function"] = r.function;
    b["language_tag"] = r.language_tag;
    b["strategy"] = r.strategy;
    b["A_ms"] = cost::format_ms_tenths(c.mean_exact(c.a));
    b["B_ms"] = cost::format_ms_tenths(c.mean_exact(c.b));
    b["C_ms"] = cost::format_ms_tenths(c.mean_exact(c.c));
    b["D_ms"] = cost::format_ms_tenths(c.mean_exact(c.d));
    breakdown.push_back(std::move(b));

    ordered_json s;
    s["function"] = r.function;
    s["language_tag"] = r.language_tag;
    s["strategy"] = r.strategy;
    s["eager_bytes"] = r.eager_bytes;
    s["full_snapshot_bytes"] = r.full_snapshot_bytes;
    sizes.push_back(std::move(s));
  }
  ordered_json doc;
  doc["latency"] = std::move(latency);
  doc["breakdown"] = std::move(breakdown);
  doc["eager_sizes"] = std::move(sizes);
  return doc.dump(2) + "\n";
}

std::vector<fs::path> emit_report(const std::vector<ReportRecord>& records, ReportFormat format,
                                  const fs::path& out_dir) {
  require_records(records);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, fmt::format("cannot create {}: {}", out_dir.string(), ec.message()));
  }
  std::vector<fs::path> written;
  auto put = [&](const char* name, const std::string& text) {
    const fs::path p = out_dir / name;
    snapshot::write_file_text(p, text);
    written.push_back(p);
  };
  if (format == ReportFormat::kCsv) {
    put("latency.csv", latency_csv(records));
    put("breakdown.csv", breakdown_csv(records));
    put("eager_sizes.csv", eager_sizes_csv(records));
  } else {
    put("report.json", report_json(records));
  }
  return written;
}

CowRatioRow cow_ratio(const FunctionArtifacts& art, std::uint64_t request_seed,
                      const cost::CostParams& params) {
  const guest::WorkloadSpec& spec = art.spec;
  const restore::RestorePlan plan =
      restore::plan_restore(restore::StrategyId::kSnapFaas, spec, art.inputs());
  restore::BootResult b = restore::boot(plan, spec, params);
  b.state.memory.set_trace(true);
  const restore::InvokeResult r = restore::invoke(b.state, spec, request_seed, params);

  std::set<guest::PageId> copied;
  for (const restore::AccessEvent& e : b.state.memory.trace()) {
    if (e.write && b.state.memory.origin(e.page) == restore::PagePolicy::kSharedCow) {
      copied.insert(e.page);
    }
  }

  CowRatioRow row;
  row.function = spec.name;
  row.language_tag = spec.language_tag;
  row.base_pages = art.base->pages.size();
  row.cow_faults = r.ledger.cow_faults;
  row.trace_cow_pages = copied.size();
  row.ratio = row.base_pages == 0 ? 0.0
                                  : static_cast<double>(row.cow_faults) /
                                        static_cast<double>(row.base_pages);
  if (row.trace_cow_pages != row.cow_faults) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("{}: trace shows {} copied base pages, ledger {}", spec.name,
                            row.trace_cow_pages, row.cow_faults));
  }
  return row;
}

std::vector<CowRatioRow> cow_ratio_report(const std::vector<FunctionArtifacts>& corpus,
                                          const cost::CostParams& params) {
  std::vector<CowRatioRow> out;
  for (const FunctionArtifacts& a : corpus) {
    out.push_back(cow_ratio(a, a.ws.generation_request_seed, params));
  }
  return out;
}

std::string cow_ratio_csv(const std::vector<CowRatioRow>& rows) {
  std::string out = "function,language_tag,base_pages,cow_faults,trace_cow_pages,ratio\r\n";
  for (const CowRatioRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{:.6f}\r\n", csv_field(r.function),
                       csv_field(r.language_tag), r.base_pages, r.cow_faults, r.trace_cow_pages,
                       r.ratio);
  }
  return out;
}

}  // namespace snaplab::harness
