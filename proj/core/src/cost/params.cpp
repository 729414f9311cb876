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

#include "snaplab/cost/params.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "snaplab/common/error.hpp"

namespace snaplab::cost {
namespace {

using nlohmann::ordered_json;

Micros micros_field(const ordered_json& j, const char* key, Micros fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) {
    throw Error(ErrorCode::kMalformedDocument,
                fmt::format("cost params: '{}' must be a number", key));
  }
  return micros_from_double(it->get<double>());
}

double micros_json(const Micros& us) { return to_double(us); }

}  // namespace

Micros CostParams::c_for(std::string_view strategy) const {
  if (auto it = c_us_by_strategy.find(strategy); it != c_us_by_strategy.end()) {
    return it->second;
  }
  return c_us;
}

Micros CostParams::disk_transfer_us(std::uint64_t pages) const {
  return Micros(static_cast<std::int64_t>(pages) * page_size_bytes * 1'000'000,
                bw_disk_bytes_per_s);
}

void CostParams::validate() const {
  auto positive = [](const Micros& v, const char* name) {
    if (v <= 0) {
      throw Error(ErrorCode::kInvariantViolation,
                  fmt::format("cost params: {} must be positive", name));
    }
  };
  positive(c_us, "c_us");
  positive(lat_disk_fault_us, "lat_disk_fault_us");
  positive(lat_mem_fault_us, "lat_mem_fault_us");
  positive(residual_init_us, "residual_init_us");
  for (const auto& [name, c] : c_us_by_strategy) positive(c, "c_us_by_strategy");
  if (eager_batch_seek_us < 0) {
    throw Error(ErrorCode::kInvariantViolation,
                "cost params: eager_batch_seek_us must be non-negative");
  }
  if (bw_disk_bytes_per_s <= 0) {
    throw Error(ErrorCode::kInvariantViolation,
                "cost params: bw_disk_bytes_per_s must be positive");
  }
  if (page_size_bytes == 0 || (page_size_bytes & (page_size_bytes - 1)) != 0) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("cost params: page size {} is not a power of two",
                            page_size_bytes));
  }
}

CostParams parse_cost_params(std::string_view json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::kMalformedDocument, e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kMalformedDocument, "cost params must be a JSON object");
  }
  CostParams p;
  p.c_us = micros_field(j, "c_us", p.c_us);
  p.lat_disk_fault_us = micros_field(j, "lat_disk_fault_us", p.lat_disk_fault_us);
  p.lat_mem_fault_us = micros_field(j, "lat_mem_fault_us", p.lat_mem_fault_us);
  p.residual_init_us = micros_field(j, "residual_init_us", p.residual_init_us);
  p.eager_batch_seek_us = micros_field(j, "eager_batch_seek_us", p.eager_batch_seek_us);
  if (auto it = j.find("bw_disk_bytes_per_s"); it != j.end()) {
    p.bw_disk_bytes_per_s = it->get<std::int64_t>();
  }
  if (auto it = j.find("page_size_bytes"); it != j.end()) {
    p.page_size_bytes = it->get<std::uint32_t>();
  }
  if (auto it = j.find("c_us_by_strategy"); it != j.end()) {
    if (!it->is_object()) {
      throw Error(ErrorCode::kMalformedDocument, "c_us_by_strategy must be an object");
    }
    for (const auto& [name, v] : it->items()) {
      p.c_us_by_strategy[name] = micros_from_double(v.get<double>());
    }
  }
  p.validate();
  return p;
}

CostParams load_cost_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open cost params " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cost_params(buf.str());
}

std::string cost_params_to_json(const CostParams& params) {
  ordered_json j;
  j["c_us"] = micros_json(params.c_us);
  j["bw_disk_bytes_per_s"] = params.bw_disk_bytes_per_s;
  j["lat_disk_fault_us"] = micros_json(params.lat_disk_fault_us);
  j["lat_mem_fault_us"] = micros_json(params.lat_mem_fault_us);
  j["page_size_bytes"] = params.page_size_bytes;
  j["residual_init_us"] = micros_json(params.residual_init_us);
  j["eager_batch_seek_us"] = micros_json(params.eager_batch_seek_us);
  if (!params.c_us_by_strategy.empty()) {
    ordered_json by = ordered_json::object();
    for (const auto& [name, c] : params.c_us_by_strategy) by[name] = micros_json(c);
    j["c_us_by_strategy"] = std::move(by);
  }
  return j.dump(2) + "\n";
}

}  // namespace snaplab::cost
