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

#include <memory>
#include <optional>
#include <vector>

#include "snaplab/guest/workload.hpp"
#include "snaplab/restore/layered_memory.hpp"
#include "snaplab/restore/strategy.hpp"
#include "snaplab/snapshot/snapshot.hpp"

namespace snaplab::restore {

// Per-page restoration policy realizing one strategy for one function.
struct RestorePlan {
  StrategyId strategy = StrategyId::kRegular;
  // Indexed by page id; pages past the end are zero-fill.
  std::vector<PagePolicy> policy_map;
  std::vector<PageId> eager_page_ids;
  // Residual initialization phases run at boot.
  guest::PhaseRange phases_to_execute;
  // Registers and devices to install; empty for a fresh boot.
  std::optional<snapshot::SnapshotMetadata> metadata_source;

  std::shared_ptr<const snapshot::BaseSnapshot> base;
  // Disk-resident page source: the diff snapshot, or the full snapshot for
  // Reap and FullDemand.
  std::shared_ptr<const snapshot::Snapshot> disk;

  // Geometry the plan was built for.
  snapshot::SnapshotProvenance provenance;

  PagePolicy policy(PageId page) const {
    return page < policy_map.size() ? policy_map[page] : PagePolicy::kZeroFill;
  }
  std::size_t count(PagePolicy p) const;
};

// Inputs a strategy may need. Missing inputs required by the chosen strategy
// raise MissingArtifact.
struct PlanInputs {
  std::shared_ptr<const snapshot::BaseSnapshot> base;
  std::shared_ptr<const snapshot::DiffSnapshot> diff;
  const snapshot::WorkingSetFile* ws = nullptr;
  std::shared_ptr<const snapshot::FullSnapshot> full;
  const snapshot::WorkingSetFile* full_ws = nullptr;
};

// Policy tables:
//   regular       all zero-fill; run every phase before Execution
//   full-demand   full snapshot pages on demand
//   reap          full-snapshot working set eager, rest on demand
//   seuss         base shared COW; run FunctionInit from source
//   snapfaas-     base shared COW; all diff pages eager
//   snapfaas      base shared COW; diff working set eager, rest on demand
// Throws MissingArtifact naming the absent input and ForeignWorkingSet when a
// working set belongs to another snapshot.
RestorePlan plan_restore(StrategyId strategy, const guest::WorkloadSpec& spec,
                         const PlanInputs& inputs);

}  // namespace snaplab::restore
