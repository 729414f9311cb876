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
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "snaplab/guest/page_content.hpp"

namespace snaplab::restore {

using guest::PageId;

// How a page is brought into a restored instance.
enum class PagePolicy : std::uint8_t {
  kZeroFill,
  kResidentPrivate,
  kSharedCow,   // in-memory base image, copied on first write
  kEagerDisk,   // loaded in one batch at boot
  kDemandDisk,  // synchronous fault on first access
};

std::string_view page_policy_name(PagePolicy p);

struct FaultCounters {
  std::uint64_t demand_faults = 0;
  std::uint64_t cow_faults = 0;
};

struct AccessEvent {
  PageId page = 0;
  bool write = false;
  bool operator==(const AccessEvent&) const = default;
};

// Guest physical memory assembled from layers: private pages, pages loaded
// eagerly from disk, a shared copy-on-write base image, disk-backed pages
// faulted on demand, and zero fill. Every page has exactly one origin policy.
// Touching a shared or disk-backed page charges a fault counter exactly once.
class LayeredMemory {
 public:
  LayeredMemory() = default;
  LayeredMemory(std::uint64_t workload_seed, std::uint64_t page_count,
                std::uint32_t page_size);

  std::uint64_t page_count() const { return slots_.size(); }
  std::uint32_t page_size() const { return page_size_; }
  std::uint64_t workload_seed() const { return workload_seed_; }

  // Layer installation. `bytes` must stay valid for the lifetime of this
  // memory; hold the owner with retain().
  void install_private(PageId page, const guest::PageContent& content);
  void install_shared(PageId page, const std::uint8_t* bytes,
                      std::uint64_t digest);
  void install_eager(PageId page, const std::uint8_t* bytes,
                     std::uint64_t digest);
  void install_demand(PageId page, const std::uint8_t* bytes,
                      std::uint64_t digest);
  void retain(std::shared_ptr<const void> owner);

  // Guest accesses. read() returns the page digest of the observed bytes.
  std::uint64_t read(PageId page);
  void write(PageId page, std::uint64_t step_seed);

  // Inspection without charging faults.
  PagePolicy origin(PageId page) const { return slots_[page].origin; }
  bool is_private(PageId page) const;
  guest::PageContent content(PageId page) const { return slots_[page].content; }
  std::uint64_t peek_digest(PageId page) const;
  void render(PageId page, std::span<std::uint8_t> out) const;

  const FaultCounters& counters() const { return counters_; }

  void set_trace(bool enabled) { trace_enabled_ = enabled; }
  const std::vector<AccessEvent>& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }

 private:
  enum class Residency : std::uint8_t { kZero, kPrivate, kShared, kOnDisk };

  struct Slot {
    PagePolicy origin = PagePolicy::kZeroFill;
    Residency residency = Residency::kZero;
    guest::PageContent content;
  };

  Slot& slot(PageId page);

  std::uint64_t workload_seed_ = 0;
  std::uint32_t page_size_ = guest::kDefaultPageSize;
  std::vector<Slot> slots_;
  std::vector<std::shared_ptr<const void>> owners_;
  FaultCounters counters_;
  bool trace_enabled_ = false;
  std::vector<AccessEvent> trace_;
};

}  // namespace snaplab::restore
