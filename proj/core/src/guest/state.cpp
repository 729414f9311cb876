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

#include "snaplab/guest/state.hpp"

namespace snaplab::guest {

NetConfig static_network() {
  return {"172.16.0.2", "172.16.0.1", "aa:fc:00:00:00:01", "02:00:5e:10:00:01"};
}

GuestState fresh_state(std::uint64_t workload_seed, std::uint64_t memory_pages,
                       std::uint32_t page_size) {
  return GuestState{restore::LayeredMemory(workload_seed, memory_pages, page_size),
                    Registers{}, DeviceState{}};
}

std::vector<PageId> PageBitmap::ids() const {
  std::vector<PageId> out;
  out.reserve(count_);
  for (PageId p = 0; p < bits_.size(); ++p) {
    if (bits_[p]) out.push_back(p);
  }
  return out;
}

}  // namespace snaplab::guest
