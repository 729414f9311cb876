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
#include <span>

namespace snaplab::guest {

using PageId = std::uint64_t;

inline constexpr std::uint32_t kDefaultPageSize = 4096;

// Deterministic content of byte `offset` in a page written by a Write step.
std::uint8_t fill_byte(std::uint64_t workload_seed, std::uint64_t step_seed,
                       std::uint64_t page_id, std::uint64_t offset) noexcept;

// Fills `out` with fill_byte(workload_seed, step_seed, page_id, i) for each i.
void render_generated(std::uint64_t workload_seed, std::uint64_t step_seed,
                      PageId page_id, std::span<std::uint8_t> out) noexcept;

// What a page holds, without materializing it. Generated pages are described
// by the seed of the step that last wrote them; stored pages point into an
// immutable snapshot payload that outlives the reference.
struct PageContent {
  enum class Kind : std::uint8_t { kZero, kGenerated, kStored };

  Kind kind = Kind::kZero;
  std::uint64_t step_seed = 0;
  const std::uint8_t* stored = nullptr;
  std::uint64_t stored_digest = 0;

  static PageContent zero() { return {}; }
  static PageContent generated(std::uint64_t step_seed) {
    return {Kind::kGenerated, step_seed, nullptr, 0};
  }
  static PageContent from_storage(const std::uint8_t* bytes,
                                  std::uint64_t digest) {
    return {Kind::kStored, 0, bytes, digest};
  }
};

void render_page(const PageContent& content, std::uint64_t workload_seed,
                 PageId page_id, std::span<std::uint8_t> out);

// FNV-1a 64 over the rendered page bytes. Generated and zero digests are
// memoized per thread.
std::uint64_t page_digest(const PageContent& content,
                          std::uint64_t workload_seed, PageId page_id,
                          std::uint32_t page_size);

}  // namespace snaplab::guest
