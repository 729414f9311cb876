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

#include "snaplab/throughput/throughput.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"

namespace snaplab::throughput {
namespace {

void check(const MachineSpec& regular, const MachineSpec& snapfaas, const WorkloadMix& mix) {
  if (regular.slots() < 1 || snapfaas.slots() < 1) {
    throw Error(ErrorCode::kNoCapacity,
                fmt::format("machine fits {} regular and {} snapfaas instances",
                            regular.slots(), snapfaas.slots()));
  }
  if (!(mix.cold_fraction >= 0.0 && mix.cold_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("cold fraction {} outside [0, 1]", mix.cold_fraction));
  }
  if (!(mix.warm_service_us > 0.0) || mix.regular_cold_service_us < mix.warm_service_us ||
      mix.snapfaas_cold_service_us < mix.warm_service_us) {
    throw Error(ErrorCode::kInvariantViolation,
                "service times must be positive and cold no faster than warm");
  }
}

double mean_service_us(double f, double warm, double cold) {
  return f * cold + (1.0 - f) * warm;
}

double per_second(double slots, double mean_us) { return slots * 1e6 / mean_us; }

// Completed requests per second of `slots` servers kept busy by `total`
// requests with Bernoulli(f) cold draws.
double discrete_mode(std::uint64_t slots, double f, double warm, double cold,
                     std::uint64_t total, std::uint64_t seed) {
  std::priority_queue<double, std::vector<double>, std::greater<>> free_at;
  for (std::uint64_t s = 0; s < slots; ++s) free_at.push(0.0);
  double makespan = 0.0;
  for (std::uint64_t i = 0; i < total; ++i) {
    const double u = static_cast<double>(splitmix64(seed + i) >> 11) * 0x1.0p-53;
    const double t = free_at.top() + (u < f ? cold : warm);
    free_at.pop();
    free_at.push(t);
    makespan = std::max(makespan, t);
  }
  return static_cast<double>(total) * 1e6 / makespan;
}

}  // namespace

std::uint64_t MachineSpec::slots() const {
  if (per_instance_memory_bytes == 0 || resident_base_bytes >= total_memory_bytes) return 0;
  return (total_memory_bytes - resident_base_bytes) / per_instance_memory_bytes;
}

ThroughputResult simulate_throughput(const MachineSpec& regular, const MachineSpec& snapfaas,
                                     const WorkloadMix& mix) {
  check(regular, snapfaas, mix);
  const double f = mix.cold_fraction;
  ThroughputResult r;
  r.cold_fraction = f;
  r.tput_regular = per_second(static_cast<double>(regular.slots()),
                              mean_service_us(f, mix.warm_service_us,
                                              mix.regular_cold_service_us));
  r.tput_snapfaas = per_second(static_cast<double>(snapfaas.slots()),
                               mean_service_us(f, mix.warm_service_us,
                                               mix.snapfaas_cold_service_us));
  r.relative_difference = (r.tput_snapfaas - r.tput_regular) / r.tput_regular;
  return r;
}

double find_crossover(const MachineSpec& regular, const MachineSpec& snapfaas,
                      const WorkloadMix& mix) {
  check(regular, snapfaas, mix);
  // S_s (f cr + (1-f) w) = S_r (f cs + (1-f) w), linear in f.
  const double sr = static_cast<double>(regular.slots());
  const double ss = static_cast<double>(snapfaas.slots());
  const double w = mix.warm_service_us;
  const double num = (sr - ss) * w;
  const double den = ss * (mix.regular_cold_service_us - w) -
                     sr * (mix.snapfaas_cold_service_us - w);
  if (num <= 0.0) return 0.0;
  if (den <= 0.0) return 1.0;
  return std::min(1.0, num / den);
}

ThroughputResult simulate_discrete(const MachineSpec& regular, const MachineSpec& snapfaas,
                                   const WorkloadMix& mix, std::uint64_t requests_per_slot,
                                   std::uint64_t seed) {
  check(regular, snapfaas, mix);
  ThroughputResult r;
  r.cold_fraction = mix.cold_fraction;
  // Both modes see the same cold/warm sequence.
  r.tput_regular = discrete_mode(regular.slots(), mix.cold_fraction, mix.warm_service_us,
                                 mix.regular_cold_service_us,
                                 regular.slots() * requests_per_slot, seed);
  r.tput_snapfaas = discrete_mode(snapfaas.slots(), mix.cold_fraction, mix.warm_service_us,
                                  mix.snapfaas_cold_service_us,
                                  snapfaas.slots() * requests_per_slot, seed);
  r.relative_difference = (r.tput_snapfaas - r.tput_regular) / r.tput_regular;
  return r;
}

std::vector<double> Scenario::sweep_points() const {
  if (!(sweep_step > 0.0) || sweep_end < sweep_start) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("bad sweep [{}, {}] step {}", sweep_start, sweep_end, sweep_step));
  }
  const auto n = static_cast<std::uint64_t>(
      std::floor((sweep_end - sweep_start) / sweep_step + 1e-9));
  std::vector<double> out;
  for (std::uint64_t i = 0; i <= n; ++i) {
    out.push_back(std::min(sweep_end, sweep_start + static_cast<double>(i) * sweep_step));
  }
  return out;
}

Scenario parse_scenario(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    Scenario s;
    const auto& m = j.at("machine");
    s.regular.total_memory_bytes = m.at("total_memory_bytes").get<std::uint64_t>();
    s.regular.per_instance_memory_bytes = m.at("per_instance_memory_bytes").get<std::uint64_t>();
    s.snapfaas = s.regular;
    s.snapfaas.resident_base_bytes = m.at("resident_base_bytes").get<std::uint64_t>();
    const auto& x = j.at("mix");
    s.mix.warm_service_us = x.at("warm_service_us").get<double>();
    s.mix.regular_cold_service_us = x.at("regular_cold_service_us").get<double>();
    s.mix.snapfaas_cold_service_us = x.at("snapfaas_cold_service_us").get<double>();
    if (j.contains("sweep")) {
      const auto cf = j.at("sweep").at("cold_fraction").get<std::vector<double>>();
      if (cf.size() != 3) {
        throw Error(ErrorCode::kMalformedDocument,
                    "sweep.cold_fraction must be [start, end, step]");
      }
      s.sweep_start = cf[0];
      s.sweep_end = cf[1];
      s.sweep_step = cf[2];
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, fmt::format("throughput scenario: {}", e.what()));
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<ThroughputResult> sweep(const Scenario& scenario) {
  std::vector<ThroughputResult> out;
  for (double f : scenario.sweep_points()) {
    WorkloadMix mix = scenario.mix;
    mix.cold_fraction = f;
    out.push_back(simulate_throughput(scenario.regular, scenario.snapfaas, mix));
  }
  return out;
}

std::string throughput_csv(const std::vector<ThroughputResult>& rows) {
  std::string out = "cold_fraction,tput_regular,tput_snapfaas,rel_diff\r\n";
  for (const auto& r : rows) {
    out += fmt::format("{:.4f},{:.6f},{:.6f},{:.6f}\r\n", r.cold_fraction, r.tput_regular,
                       r.tput_snapfaas, r.relative_difference);
  }
  return out;
}

}  // namespace snaplab::throughput
