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
#include <map>
#include <string>
#include <string_view>

#include "snaplab/cost/duration.hpp"

namespace snaplab::cost {

// Storage-medium and platform parameters of the overhead model.
//
// Defaults: c is the midpoint of the 4.5-9.0 ms configuration constant seen
// across strategies; disk figures are a SATA SSD (500 MB/s sequential,
// 50 us random read); a COW copy of one 4 KB page costs 1 us; the residual
// host-channel connect costs 5 ms.
struct CostParams {
  Micros c_us{6000};
  std::int64_t bw_disk_bytes_per_s = 500'000'000;
  Micros lat_disk_fault_us{50};
  Micros lat_mem_fault_us{1};
  std::uint32_t page_size_bytes = 4096;
  Micros residual_init_us{5000};
  // Charged once per non-empty eager batch, on top of the bandwidth term.
  Micros eager_batch_seek_us{0};
  // Per-strategy overrides of c, keyed by strategy name.
  std::map<std::string, Micros, std::less<>> c_us_by_strategy;

  Micros c_for(std::string_view strategy) const;
  // pages * P / bw_disk, in microseconds.
  Micros disk_transfer_us(std::uint64_t pages) const;

  // Throws Error{kInvariantViolation} unless all parameters are strictly
  // positive (the seek penalty may be zero) and the page size is a power
  // of two.
  void validate() const;
};

CostParams parse_cost_params(std::string_view json_text);
CostParams load_cost_params(const std::filesystem::path& path);
std::string cost_params_to_json(const CostParams& params);

}  // namespace snaplab::cost
