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
#include <optional>
#include <span>
#include <vector>

#include "snaplab/guest/page_content.hpp"

namespace snaplab::snapshot {

using guest::PageId;

// Only the pages that were dirtied, in strictly increasing page order. Each
// entry's FNV-1a digest is computed once on append.
class SparsePageFile {
 public:
  explicit SparsePageFile(std::uint32_t page_size = guest::kDefaultPageSize);

  std::uint32_t page_size() const { return page_size_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::uint64_t payload_bytes() const { return payload_.size(); }

  const std::vector<PageId>& ids() const { return ids_; }
  PageId id(std::size_t index) const { return ids_[index]; }
  std::span<const std::uint8_t> page(std::size_t index) const {
    return {payload_.data() + index * page_size_, page_size_};
  }
  std::uint64_t digest(std::size_t index) const { return digests_[index]; }
  std::optional<std::size_t> find(PageId id) const;

  // Throws Error{kInvariantViolation} if `id` does not exceed the last id or
  // the payload is not exactly one page.
  void append(PageId id, std::span<const std::uint8_t> bytes);
  void reserve(std::size_t pages);

  bool operator==(const SparsePageFile& other) const {
    return page_size_ == other.page_size_ && ids_ == other.ids_ &&
           payload_ == other.payload_;
  }

 private:
  std::uint32_t page_size_;
  std::vector<PageId> ids_;
  std::vector<std::uint8_t> payload_;
  std::vector<std::uint64_t> digests_;
};

}  // namespace snaplab::snapshot
