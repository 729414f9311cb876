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

#include <compare>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace snaplab::cost {

// Exact microseconds. Every latency is composed in rational arithmetic and
// rounded only when reported.
// Test equality against Micros values only: with C++20 rewritten
// comparisons, boost::rational's mixed == and != with an integer recurse.
using Micros = boost::rational<std::int64_t>;

// Integer count of 0.1 us, the reporting resolution.
struct TenthMicros {
  std::int64_t value = 0;

  auto operator<=>(const TenthMicros&) const = default;
  // "7002.0"
  std::string str() const;
  double as_micros() const { return static_cast<double>(value) / 10.0; }
  Micros exact() const { return Micros(value, 10); }
};

// Round half-up (towards +infinity on ties) to 0.1 us.
TenthMicros round_tenths(const Micros& us);

// Milliseconds rounded half-up to 0.1 ms, e.g. "5.7".
std::string format_ms_tenths(const Micros& us);

// Nearest multiple of 0.001 us; used for configuration input.
Micros micros_from_double(double us);
double to_double(const Micros& us);

inline Micros max(const Micros& a, const Micros& b) { return a < b ? b : a; }

}  // namespace snaplab::cost
