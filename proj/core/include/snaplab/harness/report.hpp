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
#include <string>
#include <string_view>
#include <vector>

#include "snaplab/harness/artifacts.hpp"
#include "snaplab/harness/bench.hpp"

namespace snaplab::harness {

enum class ReportFormat { kCsv, kJson };

std::string records_to_json(const std::vector<ReportRecord>& records);
std::vector<ReportRecord> parse_records(std::string_view json_text);

// Per (function, strategy) means over rounds, e2e normalized to snapfaas.
std::string latency_csv(const std::vector<ReportRecord>& records);
// Mean A-D per (function, strategy) in ms with 0.1 precision.
std::string breakdown_csv(const std::vector<ReportRecord>& records);
// Eagerly restored bytes per (function, strategy) beside the full snapshot.
std::string eager_sizes_csv(const std::vector<ReportRecord>& records);
// The three tables above as one JSON document.
std::string report_json(const std::vector<ReportRecord>& records);

// Writes latency.csv, breakdown.csv, eager_sizes.csv or report.json into
// `out_dir`; returns the paths written. Throws InvariantViolation on empty
// input.
std::vector<std::filesystem::path> emit_report(const std::vector<ReportRecord>& records,
                                               ReportFormat format,
                                               const std::filesystem::path& out_dir);

struct CowRatioRow {
  std::string function;
  std::string language_tag;
  std::uint64_t base_pages = 0;
  std::uint64_t cow_faults = 0;        // from the ledger
  std::uint64_t trace_cow_pages = 0;   // recomputed from the access trace
  double ratio = 0.0;                  // cow_faults / base_pages
};

// Restores each function under snapfaas, invokes it with its working-set
// seed while tracing accesses, and reports base pages copied on write.
// Throws InvariantViolation when trace and ledger disagree.
CowRatioRow cow_ratio(const FunctionArtifacts& artifacts, std::uint64_t request_seed,
                      const cost::CostParams& params);
std::vector<CowRatioRow> cow_ratio_report(const std::vector<FunctionArtifacts>& corpus,
                                          const cost::CostParams& params);
std::string cow_ratio_csv(const std::vector<CowRatioRow>& rows);

// RFC 4180 field quoting.
std::string csv_field(std::string_view value);

}  // namespace snaplab::harness
