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

#include <gtest/gtest.h>

#include <cmath>

#include "snaplab/common/error.hpp"
#include "snaplab/throughput/throughput.hpp"
#include "support.hpp"

namespace snaplab::throughput {
namespace {

constexpr std::uint64_t GiB = 1ULL << 30;
constexpr std::uint64_t MiB = 1ULL << 20;

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

// Independent closed form: slots / (f * cold + (1 - f) * warm), per second.
double ref_tput(std::uint64_t slots, double f, double warm, double cold) {
  return static_cast<double>(slots) / ((f * cold + (1 - f) * warm) / 1e6);
}

Scenario shipped() { return load_scenario(snaplab::testing::scenario_dir() / "throughput.json"); }

TEST(Machine, Slots) {
  EXPECT_EQ((MachineSpec{64 * GiB, 16 * GiB, 0}).slots(), 4u);
  EXPECT_EQ((MachineSpec{64 * GiB, 16 * GiB, 196 * MiB}).slots(), 3u);
  EXPECT_EQ((MachineSpec{1 * GiB, 2 * GiB, 0}).slots(), 0u);
  EXPECT_EQ((MachineSpec{1 * GiB, 1 * GiB, 2 * GiB}).slots(), 0u);
}

TEST(Simulate, EqualSlotsNoColdStartsIsSymmetric) {
  const MachineSpec m{64 * GiB, 1 * GiB, 0};
  const auto r = simulate_throughput(m, m, {0.0, 1000, 5000, 1200});
  EXPECT_DOUBLE_EQ(r.relative_difference, 0.0);
  EXPECT_DOUBLE_EQ(r.tput_regular, 64 / 1e-3);
}

TEST(Simulate, ResidentBaseHurtsWhenEverythingIsWarm) {
  const MachineSpec reg{2 * GiB, 512 * MiB, 0};
  const MachineSpec sf{2 * GiB, 512 * MiB, 196 * MiB};
  const auto r = simulate_throughput(reg, sf, {0.0, 1000, 5000, 1200});
  EXPECT_LT(r.relative_difference, 0.0);
  EXPECT_DOUBLE_EQ(r.relative_difference, 3.0 / 4.0 - 1.0);
}

TEST(Simulate, MatchesReferenceFormula) {
  const Scenario s = shipped();
  for (double f : s.sweep_points()) {
    const auto r = simulate_throughput(s.regular, s.snapfaas, {f, s.mix.warm_service_us,
                                                              s.mix.regular_cold_service_us,
                                                              s.mix.snapfaas_cold_service_us});
    const double reg = ref_tput(s.regular.slots(), f, s.mix.warm_service_us,
                                s.mix.regular_cold_service_us);
    const double snap = ref_tput(s.snapfaas.slots(), f, s.mix.warm_service_us,
                                 s.mix.snapfaas_cold_service_us);
    EXPECT_NEAR(r.tput_regular, reg, 1e-9 * reg);
    EXPECT_NEAR(r.tput_snapfaas, snap, 1e-9 * snap);
    EXPECT_NEAR(r.relative_difference, (snap - reg) / reg, 1e-12);
  }
}

TEST(Simulate, Errors) {
  const MachineSpec ok{4 * GiB, 1 * GiB, 0};
  const MachineSpec none{1 * GiB, 2 * GiB, 0};
  EXPECT_EQ(code_of([&] { simulate_throughput(none, ok, {0.5, 1, 2, 2}); }),
            ErrorCode::kNoCapacity);
  EXPECT_EQ(code_of([&] { simulate_throughput(ok, none, {0.5, 1, 2, 2}); }),
            ErrorCode::kNoCapacity);
  EXPECT_EQ(code_of([&] { simulate_throughput(ok, ok, {1.5, 1, 2, 2}); }),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(code_of([&] { simulate_throughput(ok, ok, {0.5, 10, 2, 20}); }),
            ErrorCode::kInvariantViolation);
}

TEST(Crossover, Boundaries) {
  const MachineSpec m{8 * GiB, 1 * GiB, 0};
  EXPECT_DOUBLE_EQ(find_crossover(m, m, {0, 100, 900, 120}), 0.0);
  const MachineSpec fewer{8 * GiB, 1 * GiB, 1 * GiB};
  EXPECT_DOUBLE_EQ(find_crossover(m, fewer, {0, 100, 900, 900}), 1.0);
}

TEST(Crossover, InteriorSolvesEquality) {
  const MachineSpec reg{8 * GiB, 1 * GiB, 0};
  const MachineSpec sf{8 * GiB, 1 * GiB, 1 * GiB};
  const WorkloadMix mix{0, 100, 900, 120};
  const double f = find_crossover(reg, sf, mix);
  ASSERT_GT(f, 0.0);
  ASSERT_LT(f, 1.0);
  auto at = mix;
  at.cold_fraction = f;
  EXPECT_NEAR(simulate_throughput(reg, sf, at).relative_difference, 0.0, 1e-12);
}

TEST(Shipped, ShapeAndCrossover) {
  const Scenario s = shipped();
  EXPECT_EQ(s.regular.slots(), 4u);
  EXPECT_EQ(s.snapfaas.slots(), 3u);
  EXPECT_EQ(s.snapfaas.resident_base_bytes, 196 * MiB);
  const auto rows = sweep(s);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_LT(rows.front().relative_difference, 0.0);
  EXPECT_GE(rows.back().relative_difference, 0.75);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].tput_regular, rows[i - 1].tput_regular);
    EXPECT_LE(rows[i].tput_snapfaas, rows[i - 1].tput_snapfaas);
    EXPECT_GE(rows[i].relative_difference, rows[i - 1].relative_difference);
  }
  const double x = find_crossover(s.regular, s.snapfaas, s.mix);
  EXPECT_GE(x, 0.15);
  EXPECT_LE(x, 0.45);
  // At 30% cold starts the gain is about a quarter, within 15 points.
  auto mix = s.mix;
  mix.cold_fraction = 0.3;
  EXPECT_NEAR(simulate_throughput(s.regular, s.snapfaas, mix).relative_difference, 0.25, 0.15);
}

TEST(Discrete, AgreesWithClosedFormWithinTwoPercent) {
  const Scenario s = shipped();
  for (double f : {0.0, 0.1, 0.3, 0.5, 0.9, 1.0}) {
    auto mix = s.mix;
    mix.cold_fraction = f;
    const auto closed = simulate_throughput(s.regular, s.snapfaas, mix);
    const auto des = simulate_discrete(s.regular, s.snapfaas, mix, 10'000, 42);
    EXPECT_NEAR(des.tput_regular, closed.tput_regular, 0.02 * closed.tput_regular) << f;
    EXPECT_NEAR(des.tput_snapfaas, closed.tput_snapfaas, 0.02 * closed.tput_snapfaas) << f;
  }
  auto mix = s.mix;
  mix.cold_fraction = 0.4;
  const auto a = simulate_discrete(s.regular, s.snapfaas, mix, 1000, 1);
  const auto b = simulate_discrete(s.regular, s.snapfaas, mix, 1000, 1);
  EXPECT_EQ(a.tput_regular, b.tput_regular);
}

TEST(Scenario, ParseAndCsv) {
  const Scenario s = parse_scenario(R"({
    "machine": {"total_memory_bytes": 1000, "per_instance_memory_bytes": 100,
                "resident_base_bytes": 150},
    "mix": {"warm_service_us": 10, "regular_cold_service_us": 30,
            "snapfaas_cold_service_us": 12},
    "sweep": {"cold_fraction": [0.0, 0.5, 0.25]}})");
  EXPECT_EQ(s.regular.slots(), 10u);
  EXPECT_EQ(s.snapfaas.slots(), 8u);
  EXPECT_EQ(s.sweep_points(), (std::vector<double>{0.0, 0.25, 0.5}));
  const std::string csv = throughput_csv(sweep(s));
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "cold_fraction,tput_regular,tput_snapfaas,rel_diff");
  EXPECT_NE(csv.find("0.0000,1000000.000000,800000.000000,-0.200000\r\n"), std::string::npos);

  EXPECT_EQ(code_of([] { parse_scenario(R"({"machine": {}})"); }),
            ErrorCode::kMalformedDocument);
}

}  // namespace
}  // namespace snaplab::throughput
