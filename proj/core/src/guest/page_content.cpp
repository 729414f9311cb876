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

#include "snaplab/guest/page_content.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>
#include <vector>

#include "snaplab/common/hash.hpp"

namespace snaplab::guest {
namespace {

constexpr std::uint64_t kStepMul = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPageMul = 0xBF58476D1CE4E5B9ULL;
constexpr std::uint64_t kOffsetMul = 0x94D049BB133111EBULL;

struct DigestKey {
  std::uint64_t workload_seed;
  std::uint64_t step_seed;
  std::uint64_t page_id;
  std::uint32_t page_size;
  bool operator==(const DigestKey&) const = default;
};

struct DigestKeyHash {
  std::size_t operator()(const DigestKey& k) const noexcept {
    return splitmix64(k.workload_seed ^ splitmix64(k.step_seed) ^
                      (k.page_id * kPageMul) ^ k.page_size);
  }
};

constexpr std::size_t kMaxMemoEntries = 1u << 20;

std::uint64_t generated_digest(std::uint64_t workload_seed,
                               std::uint64_t step_seed, PageId page_id,
                               std::uint32_t page_size) {
  thread_local std::unordered_map<DigestKey, std::uint64_t, DigestKeyHash>
      memo;
  thread_local std::vector<std::uint8_t> scratch;
  const DigestKey key{workload_seed, step_seed, page_id, page_size};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  if (memo.size() >= kMaxMemoEntries) memo.clear();
  scratch.resize(page_size);
  render_generated(workload_seed, step_seed, page_id, scratch);
  const std::uint64_t d = fnv1a64(scratch);
  memo.emplace(key, d);
  return d;
}

std::uint64_t zero_digest(std::uint32_t page_size) {
  thread_local std::unordered_map<std::uint32_t, std::uint64_t> memo;
  if (auto it = memo.find(page_size); it != memo.end()) return it->second;
  const std::vector<std::uint8_t> zeros(page_size, 0);
  const std::uint64_t d = fnv1a64(zeros);
  memo.emplace(page_size, d);
  return d;
}

}  // namespace

std::uint8_t fill_byte(std::uint64_t workload_seed, std::uint64_t step_seed,
                       std::uint64_t page_id, std::uint64_t offset) noexcept {
  return static_cast<std::uint8_t>(
      splitmix64(workload_seed ^ (step_seed * kStepMul) ^
                 (page_id * kPageMul) ^ (offset * kOffsetMul)));
}

void render_generated(std::uint64_t workload_seed, std::uint64_t step_seed,
                      PageId page_id, std::span<std::uint8_t> out) noexcept {
  const std::uint64_t prefix =
      workload_seed ^ (step_seed * kStepMul) ^ (page_id * kPageMul);
  const std::size_t n = out.size();
  std::uint8_t* dst = out.data();
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::uint8_t>(splitmix64(prefix ^ (i * kOffsetMul)));
  }
}

void render_page(const PageContent& content, std::uint64_t workload_seed,
                 PageId page_id, std::span<std::uint8_t> out) {
  switch (content.kind) {
    case PageContent::Kind::kZero:
      std::fill(out.begin(), out.end(), std::uint8_t{0});
      return;
    case PageContent::Kind::kGenerated:
      render_generated(workload_seed, content.step_seed, page_id, out);
      return;
    case PageContent::Kind::kStored:
      std::memcpy(out.data(), content.stored, out.size());
      return;
  }
}

std::uint64_t page_digest(const PageContent& content,
                          std::uint64_t workload_seed, PageId page_id,
                          std::uint32_t page_size) {
  switch (content.kind) {
    case PageContent::Kind::kZero:
      return zero_digest(page_size);
    case PageContent::Kind::kGenerated:
      return generated_digest(workload_seed, content.step_seed, page_id,
                              page_size);
    case PageContent::Kind::kStored:
      return content.stored_digest;
  }
  return 0;
}

}  // namespace snaplab::guest
