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
#include <string>
#include <string_view>

namespace snaplab {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// Standard splitmix64 finalizer (golden-gamma increment, then two
// xor-shift-multiply rounds and a final xor-shift).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Incremental FNV-1a 64.
class Fnv1a64 {
 public:
  Fnv1a64() = default;
  explicit Fnv1a64(std::uint64_t state) : state_(state) {}

  void update(std::span<const std::uint8_t> bytes) noexcept;
  void update(std::string_view text) noexcept;
  void update_byte(std::uint8_t b) noexcept {
    state_ ^= b;
    state_ *= kFnvPrime;
  }
  // Little-endian encoding of a 64-bit word.
  void update_u64(std::uint64_t v) noexcept;

  std::uint64_t value() const noexcept { return state_; }

 private:
  std::uint64_t state_ = kFnvOffsetBasis;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

}  // namespace snaplab
