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

#include "snaplab/cost/duration.hpp"

#include <cmath>

#include <fmt/format.h>

namespace snaplab::cost {
namespace {

__extension__ using i128 = __int128;

// floor(x * scale + 1/2), computed exactly.
std::int64_t round_half_up_scaled(const Micros& x, std::int64_t scale) {
  const i128 num = static_cast<i128>(x.numerator()) * scale * 2 + x.denominator();
  const i128 den = static_cast<i128>(x.denominator()) * 2;
  i128 q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return static_cast<std::int64_t>(q);
}

std::string format_tenths(std::int64_t tenths) {
  const bool neg = tenths < 0;
  const std::int64_t mag = neg ? -tenths : tenths;
  return fmt::format("{}{}.{}", neg ? "-" : "", mag / 10, mag % 10);
}

}  // namespace

std::string TenthMicros::str() const { return format_tenths(value); }

TenthMicros round_tenths(const Micros& us) {
  return TenthMicros{round_half_up_scaled(us, 10)};
}

std::string format_ms_tenths(const Micros& us) {
  return format_tenths(round_half_up_scaled(us / 100, 1));
}

Micros micros_from_double(double us) {
  const auto milli = static_cast<std::int64_t>(std::llround(us * 1000.0));
  return Micros(milli, 1000);
}

double to_double(const Micros& us) {
  return boost::rational_cast<double>(us);
}

}  // namespace snaplab::cost
