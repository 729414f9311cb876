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

#include "snaplab/guest/workload.hpp"
#include "snaplab/snapshot/snapshot.hpp"

namespace snaplab::snapshot {

// Boots the workload from scratch with dirty tracking and captures the state
// after the last Runtime phase. Id: "<language_tag>-<content digest>".
BaseSnapshot generate_base(const guest::WorkloadSpec& spec);

// Restores `base` fully resident, runs FunctionInit with dirty tracking and
// captures the dirtied pages. Id: "<name>-<content digest>".
// Throws BaseMismatch when the runtime prefix differs from the base's.
DiffSnapshot generate_diff(const guest::WorkloadSpec& spec, const BaseSnapshot& base);

// Boots from scratch through FunctionInit and captures every dirtied page;
// the function image used by the full-snapshot strategies.
// Id: "<name>-full-<content digest>".
FullSnapshot generate_full(const guest::WorkloadSpec& spec);

// Restores base (shared) and diff (on demand), runs Execution with access
// tracking and records the diff-backed pages touched.
WorkingSetFile generate_ws(const guest::WorkloadSpec& spec, const BaseSnapshot& base,
                           const DiffSnapshot& diff, std::uint64_t request_seed);

// Same for a full snapshot restored entirely on demand.
WorkingSetFile generate_full_ws(const guest::WorkloadSpec& spec, const FullSnapshot& full,
                                std::uint64_t request_seed);

}  // namespace snaplab::snapshot
