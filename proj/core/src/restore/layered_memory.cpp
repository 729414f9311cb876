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

#include "snaplab/restore/layered_memory.hpp"

#include <fmt/format.h>

#include "snaplab/common/error.hpp"

namespace snaplab::restore {

std::string_view page_policy_name(PagePolicy p) {
  switch (p) {
    case PagePolicy::kZeroFill: return "zero-fill";
    case PagePolicy::kResidentPrivate: return "resident-private";
    case PagePolicy::kSharedCow: return "shared-cow";
    case PagePolicy::kEagerDisk: return "eager-disk";
    case PagePolicy::kDemandDisk: return "demand-disk";
  }
  return "unknown";
}

LayeredMemory::LayeredMemory(std::uint64_t workload_seed,
                             std::uint64_t page_count, std::uint32_t page_size)
    : workload_seed_(workload_seed), page_size_(page_size), slots_(page_count) {}

LayeredMemory::Slot& LayeredMemory::slot(PageId page) {
  if (page >= slots_.size()) {
    throw Error(ErrorCode::kPageOutOfRange,
                fmt::format("page {} outside memory of {} pages", page, slots_.size()));
  }
  return slots_[page];
}

void LayeredMemory::install_private(PageId page, const guest::PageContent& content) {
  Slot& s = slot(page);
  s.origin = PagePolicy::kResidentPrivate;
  s.residency = Residency::kPrivate;
  s.content = content;
}

void LayeredMemory::install_shared(PageId page, const std::uint8_t* bytes,
                                   std::uint64_t digest) {
  Slot& s = slot(page);
  s.origin = PagePolicy::kSharedCow;
  s.residency = Residency::kShared;
  s.content = guest::PageContent::from_storage(bytes, digest);
}

void LayeredMemory::install_eager(PageId page, const std::uint8_t* bytes,
                                  std::uint64_t digest) {
  Slot& s = slot(page);
  s.origin = PagePolicy::kEagerDisk;
  s.residency = Residency::kPrivate;
  s.content = guest::PageContent::from_storage(bytes, digest);
}

void LayeredMemory::install_demand(PageId page, const std::uint8_t* bytes,
                                   std::uint64_t digest) {
  Slot& s = slot(page);
  s.origin = PagePolicy::kDemandDisk;
  s.residency = Residency::kOnDisk;
  s.content = guest::PageContent::from_storage(bytes, digest);
}

void LayeredMemory::retain(std::shared_ptr<const void> owner) {
  owners_.push_back(std::move(owner));
}

std::uint64_t LayeredMemory::read(PageId page) {
  Slot& s = slot(page);
  if (trace_enabled_) trace_.push_back({page, false});
  if (s.residency == Residency::kOnDisk) {
    ++counters_.demand_faults;
    s.residency = Residency::kPrivate;
  }
  return guest::page_digest(s.content, workload_seed_, page, page_size_);
}

void LayeredMemory::write(PageId page, std::uint64_t step_seed) {
  Slot& s = slot(page);
  if (trace_enabled_) trace_.push_back({page, true});
  switch (s.residency) {
    case Residency::kOnDisk:
      // Read-modify-write: the page is faulted in, then overwritten.
      ++counters_.demand_faults;
      break;
    case Residency::kShared:
      ++counters_.cow_faults;
      break;
    case Residency::kZero:
    case Residency::kPrivate:
      break;
  }
  s.residency = Residency::kPrivate;
  s.content = guest::PageContent::generated(step_seed);
}

bool LayeredMemory::is_private(PageId page) const {
  return slots_.at(page).residency == Residency::kPrivate;
}

std::uint64_t LayeredMemory::peek_digest(PageId page) const {
  return guest::page_digest(slots_.at(page).content, workload_seed_, page, page_size_);
}

void LayeredMemory::render(PageId page, std::span<std::uint8_t> out) const {
  guest::render_page(slots_.at(page).content, workload_seed_, page, out);
}

}  // namespace snaplab::restore
