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

#include "snaplab/restore/plan.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "snaplab/common/error.hpp"

namespace snaplab::restore {
namespace {

[[noreturn]] void missing(StrategyId s, std::string_view what) {
  throw Error(ErrorCode::kMissingArtifact,
              fmt::format("strategy {} needs a {}", strategy_name(s), what));
}

snapshot::SnapshotProvenance provenance_of(const guest::WorkloadSpec& spec) {
  return {spec.language_tag, spec.workload_seed, spec.memory_pages, spec.page_size,
          guest::base_prefix_digest(spec)};
}

void mark(RestorePlan& plan, const std::vector<PageId>& ids, PagePolicy policy) {
  for (PageId p : ids) {
    if (p >= plan.policy_map.size()) {
      throw Error(ErrorCode::kPlanSpecMismatch,
                  fmt::format("snapshot page {} outside guest memory", p));
    }
    plan.policy_map[p] = policy;
  }
}

void layer_disk(RestorePlan& plan, const snapshot::Snapshot& disk,
                const snapshot::WorkingSetFile* ws) {
  if (ws == nullptr) {
    mark(plan, disk.pages.ids(), PagePolicy::kDemandDisk);
    return;
  }
  snapshot::validate_working_set(*ws, disk);
  mark(plan, disk.pages.ids(), PagePolicy::kDemandDisk);
  mark(plan, ws->ws_page_ids, PagePolicy::kEagerDisk);
}

void check_base(const snapshot::BaseSnapshot& base,
                const snapshot::SnapshotProvenance& want) {
  if (base.meta.provenance.prefix_digest != want.prefix_digest) {
    throw Error(ErrorCode::kBaseMismatch,
                fmt::format("base '{}' was not generated from this workload's runtime "
                            "prefix",
                            base.id()));
  }
}

}  // namespace

std::size_t RestorePlan::count(PagePolicy p) const {
  return static_cast<std::size_t>(std::count(policy_map.begin(), policy_map.end(), p));
}

RestorePlan plan_restore(StrategyId strategy, const guest::WorkloadSpec& spec,
                         const PlanInputs& in) {
  RestorePlan plan;
  plan.strategy = strategy;
  plan.provenance = provenance_of(spec);
  plan.policy_map.assign(spec.memory_pages, PagePolicy::kZeroFill);

  const guest::PhaseRange base_phases = spec.base_phases();
  const guest::PhaseRange init_phases = spec.function_init_phases();
  const guest::PhaseRange none{init_phases.end, init_phases.end};

  switch (strategy) {
    case StrategyId::kRegular:
      plan.phases_to_execute = {0, init_phases.end};
      break;

    case StrategyId::kFullDemand:
    case StrategyId::kReap: {
      if (!in.full) missing(strategy, "full-function snapshot");
      const snapshot::WorkingSetFile* ws = nullptr;
      if (strategy == StrategyId::kReap) {
        if (in.full_ws == nullptr) missing(strategy, "full-snapshot working set");
        ws = in.full_ws;
      }
      layer_disk(plan, *in.full, ws);
      plan.disk = in.full;
      plan.metadata_source = in.full->meta;
      plan.phases_to_execute = none;
      break;
    }

    case StrategyId::kSeuss:
      if (!in.base) missing(strategy, "base snapshot");
      check_base(*in.base, plan.provenance);
      mark(plan, in.base->pages.ids(), PagePolicy::kSharedCow);
      plan.base = in.base;
      plan.metadata_source = in.base->meta;
      plan.phases_to_execute = {base_phases.end, init_phases.end};
      break;

    case StrategyId::kSnapFaasMinus:
    case StrategyId::kSnapFaas: {
      if (!in.base) missing(strategy, "base snapshot");
      if (!in.diff) missing(strategy, "diff snapshot");
      check_base(*in.base, plan.provenance);
      if (in.diff->meta.parent_base_id != in.base->id()) {
        throw Error(ErrorCode::kBaseMismatch,
                    fmt::format("diff '{}' was generated on base '{}', not '{}'",
                                in.diff->id(), in.diff->meta.parent_base_id.value_or(""),
                                in.base->id()));
      }
      mark(plan, in.base->pages.ids(), PagePolicy::kSharedCow);
      if (strategy == StrategyId::kSnapFaasMinus) {
        mark(plan, in.diff->pages.ids(), PagePolicy::kEagerDisk);
      } else {
        if (in.ws == nullptr) missing(strategy, "working set file");
        layer_disk(plan, *in.diff, in.ws);
      }
      plan.base = in.base;
      plan.disk = in.diff;
      plan.metadata_source = in.diff->meta;
      plan.phases_to_execute = none;
      break;
    }
  }

  for (PageId p = 0; p < plan.policy_map.size(); ++p) {
    if (plan.policy_map[p] == PagePolicy::kEagerDisk) plan.eager_page_ids.push_back(p);
  }
  return plan;
}

}  // namespace snaplab::restore
