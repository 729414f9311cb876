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

#include "snaplab/restore/strategy.hpp"

namespace snaplab::restore {

std::string_view strategy_name(StrategyId id) {
  switch (id) {
    case StrategyId::kRegular: return "regular";
    case StrategyId::kFullDemand: return "full-demand";
    case StrategyId::kReap: return "reap";
    case StrategyId::kSeuss: return "seuss";
    case StrategyId::kSnapFaasMinus: return "snapfaas-";
    case StrategyId::kSnapFaas: return "snapfaas";
  }
  return "unknown";
}

std::optional<StrategyId> parse_strategy(std::string_view name) {
  for (StrategyId id : kAllStrategies) {
    if (strategy_name(id) == name) return id;
  }
  return std::nullopt;
}

}  // namespace snaplab::restore
