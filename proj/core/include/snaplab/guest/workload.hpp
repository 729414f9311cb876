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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "snaplab/guest/page_content.hpp"

namespace snaplab::guest {

// Which initialization stage a phase belongs to. Order matters: phases in a
// workload never go backwards in this order.
enum class Provenance : std::uint8_t {
  kKernel,
  kOsInit,
  kRuntime,
  kFunctionInit,
  kExecution,
};

std::string_view provenance_name(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view name);

struct PageRange {
  PageId start = 0;
  std::uint64_t count = 0;

  PageId end() const { return start + count; }
  bool contains(PageId p) const { return p >= start && p < end(); }
  bool overlaps(const PageRange& o) const {
    return start < o.end() && o.start < end();
  }
  bool operator==(const PageRange&) const = default;
};

struct WriteStep {
  PageRange range;
  std::uint64_t step_seed = 0;
};
struct ReadStep {
  PageRange range;
};
struct ComputeStep {
  std::uint64_t duration_us = 0;
};
struct MountAppFsStep {};

using Step = std::variant<WriteStep, ReadStep, ComputeStep, MountAppFsStep>;

struct Phase {
  std::string name;
  Provenance provenance = Provenance::kKernel;
  std::vector<Step> steps;
};

// Half-open range of phase indices.
struct PhaseRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool empty() const { return begin >= end; }
  std::size_t size() const { return empty() ? 0 : end - begin; }
  bool operator==(const PhaseRange&) const = default;
};

struct WorkloadSpec {
  std::string name;
  std::string language_tag;
  std::uint64_t workload_seed = 0;
  std::uint64_t memory_pages = 0;
  std::uint32_t page_size = kDefaultPageSize;
  std::vector<Phase> phases;
  // Pages backed by the application file system; Execution steps must not
  // touch them before MountAppFs ran.
  std::optional<PageRange> appfs_pages;

  // Kernel..Runtime phases (captured by a base snapshot).
  PhaseRange base_phases() const;
  // FunctionInit phases (captured by a diff snapshot).
  PhaseRange function_init_phases() const;
  PhaseRange execution_phases() const;
  PhaseRange all_phases() const { return {0, phases.size()}; }

  std::uint64_t compute_us(PhaseRange range) const;
};

// Throws Error{kMalformedDocument} on syntax/shape problems and
// Error{kInvariantViolation} when the document describes an invalid workload.
WorkloadSpec parse_workload(std::string_view json_text);
WorkloadSpec load_workload(const std::filesystem::path& path);
std::string workload_to_json(const WorkloadSpec& spec);

// Checks every type invariant; throws Error{kInvariantViolation} naming the
// offending phase/step.
void validate_workload(const WorkloadSpec& spec);

// Digest of everything that determines a base snapshot: language tag,
// workload seed, geometry and the Kernel..Runtime phases.
std::uint64_t base_prefix_digest(const WorkloadSpec& spec);

}  // namespace snaplab::guest
