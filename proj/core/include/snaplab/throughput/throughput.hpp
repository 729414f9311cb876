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

namespace snaplab::throughput {

struct MachineSpec {
  std::uint64_t total_memory_bytes = 0;
  std::uint64_t per_instance_memory_bytes = 0;
  // Memory pinned by resident base snapshots; 0 for regular mode.
  std::uint64_t resident_base_bytes = 0;

  // floor((total - resident_base) / per_instance); 0 when nothing fits.
  std::uint64_t slots() const;
};

struct WorkloadMix {
  double cold_fraction = 0.0;
  double warm_service_us = 0.0;
  double regular_cold_service_us = 0.0;
  double snapfaas_cold_service_us = 0.0;
};

struct ThroughputResult {
  double cold_fraction = 0.0;
  double tput_regular = 0.0;   // requests per second
  double tput_snapfaas = 0.0;  // requests per second
  // (snapfaas - regular) / regular
  double relative_difference = 0.0;
};

// Saturated closed system: every slot is always busy, so throughput is
// slots / mean service time. Throws NoCapacity when a mode has no slot and
// InvariantViolation on a cold service faster than warm or a fraction outside
// [0, 1].
ThroughputResult simulate_throughput(const MachineSpec& regular, const MachineSpec& snapfaas,
                                     const WorkloadMix& mix);

// Cold fraction at which both modes deliver equal throughput, solved in
// closed form; 0 or 1 when the curves do not cross inside (0, 1).
double find_crossover(const MachineSpec& regular, const MachineSpec& snapfaas,
                      const WorkloadMix& mix);

// Discrete-event run of the same system: each slot serves requests back to
// back, each cold with probability cold_fraction drawn from `seed`.
ThroughputResult simulate_discrete(const MachineSpec& regular, const MachineSpec& snapfaas,
                                   const WorkloadMix& mix, std::uint64_t requests_per_slot,
                                   std::uint64_t seed);

struct Scenario {
  MachineSpec regular;
  MachineSpec snapfaas;
  WorkloadMix mix;  // cold_fraction ignored; taken from the sweep
  double sweep_start = 0.0;
  double sweep_end = 1.0;
  double sweep_step = 0.05;

  std::vector<double> sweep_points() const;
};

// {"machine": {total_memory_bytes, per_instance_memory_bytes,
//  resident_base_bytes}, "mix": {warm_service_us, regular_cold_service_us,
//  snapfaas_cold_service_us}, "sweep": {"cold_fraction": [start, end, step]}}
// resident_base_bytes applies to snapfaas mode only.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

std::vector<ThroughputResult> sweep(const Scenario& scenario);

// cold_fraction,tput_regular,tput_snapfaas,rel_diff with CRLF line ends.
std::string throughput_csv(const std::vector<ThroughputResult>& rows);

}  // namespace snaplab::throughput
