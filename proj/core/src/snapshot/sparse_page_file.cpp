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

#include "snaplab/snapshot/sparse_page_file.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"

namespace snaplab::snapshot {

SparsePageFile::SparsePageFile(std::uint32_t page_size) : page_size_(page_size) {}

std::optional<std::size_t> SparsePageFile::find(PageId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

void SparsePageFile::append(PageId id, std::span<const std::uint8_t> bytes) {
  if (!ids_.empty() && id <= ids_.back()) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("page id {} does not follow {}", id, ids_.back()));
  }
  if (bytes.size() != page_size_) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("page {} payload is {} bytes, expected {}", id, bytes.size(),
                            page_size_));
  }
  ids_.push_back(id);
  payload_.insert(payload_.end(), bytes.begin(), bytes.end());
  digests_.push_back(fnv1a64(bytes));
}

void SparsePageFile::reserve(std::size_t pages) {
  ids_.reserve(pages);
  payload_.reserve(pages * page_size_);
  digests_.reserve(pages);
}

}  // namespace snaplab::snapshot
