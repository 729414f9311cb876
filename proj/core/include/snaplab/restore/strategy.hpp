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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace snaplab::restore {

enum class StrategyId : std::uint8_t {
  kRegular,        // boot from the kernel, no snapshot
  kFullDemand,     // full-function snapshot, every page faulted on demand
  kReap,           // full-function snapshot, working set eager, rest on demand
  kSeuss,          // in-memory base COW, function initialized from source
  kSnapFaasMinus,  // in-memory base COW, whole diff eager
  kSnapFaas,       // in-memory base COW, diff working set eager, rest on demand
};

inline constexpr std::array<StrategyId, 6> kAllStrategies = {
    StrategyId::kRegular, StrategyId::kFullDemand,    StrategyId::kReap,
    StrategyId::kSeuss,   StrategyId::kSnapFaasMinus, StrategyId::kSnapFaas};

// Stable CLI names: "regular", "full-demand", "reap", "seuss", "snapfaas-",
// "snapfaas".
std::string_view strategy_name(StrategyId id);
std::optional<StrategyId> parse_strategy(std::string_view name);

}  // namespace snaplab::restore
