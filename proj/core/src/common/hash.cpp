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

#include "snaplab/common/hash.hpp"

#include <fmt/format.h>

namespace snaplab {

void Fnv1a64::update(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = state_;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= kFnvPrime;
  }
  state_ = h;
}

void Fnv1a64::update(std::string_view text) noexcept {
  for (char c : text) update_byte(static_cast<std::uint8_t>(c));
}

void Fnv1a64::update_u64(std::uint64_t v) noexcept {
  for (int i = 0; i < 8; ++i) {
    update_byte(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  Fnv1a64 h;
  h.update(bytes);
  return h.value();
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

}  // namespace snaplab
