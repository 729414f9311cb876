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
#include <string>
#include <string_view>
#include <vector>

#include "snaplab/common/hash.hpp"
#include "snaplab/guest/page_content.hpp"
#include "snaplab/restore/layered_memory.hpp"

namespace snaplab::guest {

// The declared register set, in declaration order.
struct Registers {
  static constexpr std::array<std::string_view, 3> kNames = {
      "phase_index", "step_index", "read_checksum"};

  std::uint64_t phase_index = 0;
  std::uint64_t step_index = 0;
  std::uint64_t read_checksum = kFnvOffsetBasis;

  bool operator==(const Registers&) const = default;
};

struct NetConfig {
  std::string local_ip;
  std::string gateway_ip;
  std::string guest_mac;
  std::string bridge_mac;

  bool empty() const { return local_ip.empty(); }
  bool operator==(const NetConfig&) const = default;
};

// Host-guaranteed network setup shared by every instance on a host: a fixed
// guest address behind a software bridge with a well-known gateway.
NetConfig static_network();

struct DeviceState {
  bool appfs_mounted = false;
  bool vsock_connected = false;
  NetConfig net;

  bool operator==(const DeviceState&) const = default;
};

struct GuestState {
  restore::LayeredMemory memory;
  Registers registers;
  DeviceState device;
};

// Fresh instance state: all memory zero-fill, registers at the first phase.
GuestState fresh_state(std::uint64_t workload_seed, std::uint64_t memory_pages,
                       std::uint32_t page_size);

// One bit per page.
class PageBitmap {
 public:
  void set(PageId page) {
    if (page >= bits_.size()) bits_.resize(page + 1, 0);
    if (!bits_[page]) {
      bits_[page] = 1;
      ++count_;
    }
  }
  bool test(PageId page) const { return page < bits_.size() && bits_[page]; }
  std::size_t count() const { return count_; }
  void clear() {
    bits_.clear();
    count_ = 0;
  }
  // Sorted page ids.
  std::vector<PageId> ids() const;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

struct TrackingFlags {
  bool dirty_tracking = false;
  bool access_tracking = false;
  PageBitmap dirty_set;
  PageBitmap accessed_set;
};

}  // namespace snaplab::guest
