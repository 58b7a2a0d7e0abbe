// Copyright 2026 The btbt-neuron Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "btbt/device.h"

#include <cmath>
#include <random>
#include <sstream>

#include "btbt/error.h"
#include "gtest/gtest.h"

#ifndef BTBT_DATA_DIR
#error "BTBT_DATA_DIR must be defined"
#endif

namespace btbt {
namespace {

NeuronParams Reference() {
  NeuronParams p;
  p.leak_resistance_ohm = 1e9;
  p.membrane_capacitance_f = 1e-12;
  p.firing_threshold_v = 0.25;
  return p;
}

DeviceIVTable TwoDecades() {
  return DeviceIVTable({{0.5, 1e-12}, {1.0, 100e-12}}, "two decades");
}

TEST(DeviceIVTableTest, RejectsInvalidKnots) {
  EXPECT_THROW(DeviceIVTable({{0.5, 1e-12}}), InvalidArgument);
  EXPECT_THROW(DeviceIVTable({{0.5, 1e-12}, {0.5, 2e-12}}), InvalidArgument);
  EXPECT_THROW(DeviceIVTable({{0.5, 2e-12}, {0.6, 1e-12}}), InvalidArgument);
  EXPECT_THROW(DeviceIVTable({{0.5, -1e-12}, {0.6, 1e-12}}), InvalidArgument);
  EXPECT_FALSE(DeviceIVTable({{0.5, 0.0}, {0.6, 1e-12}}).log_interpolated());
  EXPECT_TRUE(TwoDecades().log_interpolated());
}

TEST(IvLookupTest, LogLinearMidpointIsGeometricMean) {
  EXPECT_NEAR(IvLookup(TwoDecades(), 0.75), 10e-12, 1e-24);
}

TEST(IvLookupTest, ExactAtKnots) {
  const DeviceIVTable table({{0.3, 1e-12}, {0.4, 1e-12}, {0.7, 3.3e-11},
                             {0.9, 4.4e-10}, {1.2, 7.7e-9}});
  for (const auto& k : table.knots()) {
    EXPECT_EQ(IvLookup(table, k.drain_voltage_v), k.current_a);
  }
}

TEST(IvLookupTest, LinearFallbackWithZeroCurrent) {
  const DeviceIVTable table({{0.0, 0.0}, {1.0, 2e-9}});
  EXPECT_NEAR(IvLookup(table, 0.25), 0.5e-9, 1e-21);
}

TEST(IvLookupTest, NoExtrapolation) {
  EXPECT_THROW(IvLookup(TwoDecades(), 1.5), RangeError);
  EXPECT_THROW(IvLookup(TwoDecades(), 0.49), RangeError);
  EXPECT_THROW(IvLookup(TwoDecades(), std::nan("")), RangeError);
}

TEST(IvLookupTest, MonotoneOnRandomTables) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IvKnot> knots;
    double v = u(rng);
    double i = trial % 4 == 0 ? 0.0 : 1e-12 * (1.0 + u(rng));
    const int n = 2 + static_cast<int>(u(rng) * 12);
    for (int k = 0; k < n; ++k) {
      knots.push_back({v, i});
      v += 0.01 + 0.2 * u(rng);
      // Occasional flat segment.
      i = u(rng) < 0.2 ? i : i * (1.0 + 10.0 * u(rng)) + 1e-13 * u(rng);
    }
    const DeviceIVTable table(knots);
    for (const auto& k : table.knots()) {
      ASSERT_EQ(IvLookup(table, k.drain_voltage_v), k.current_a);
    }
    double last = -1.0;
    for (int q = 0; q <= 400; ++q) {
      const double vq = table.min_voltage() +
                        (table.max_voltage() - table.min_voltage()) * q / 400.0;
      const double iq = IvLookup(table, std::min(vq, table.max_voltage()));
      ASSERT_GE(iq, last);
      last = iq;
    }
  }
}

TEST(ParseIVTableTest, ReadsCommentsAndScientificNotation) {
  std::istringstream in(
      "# measured at V_S = 0.4 V\n"
      "0.5 1e-12\n"
      "  0.75\t1.0E-11  \n"
      "\n"
      "1.0 0.0000000001\n");
  const auto table = ParseIVTable(in, "inline");
  ASSERT_EQ(table.knots().size(), 3u);
  EXPECT_EQ(table.source(), "measured at V_S = 0.4 V");
  EXPECT_EQ(table.knots()[2].current_a, 1e-10);
}

TEST(ParseIVTableTest, MalformedLineReportsLineNumber) {
  std::istringstream in("# header\n0.5 1e-12\n0.6 abc\n");
  try {
    ParseIVTable(in, "bad");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream extra("0.5 1e-12 7\n0.6 2e-12\n");
  EXPECT_THROW(ParseIVTable(extra, "bad"), ParseError);
  std::istringstream order("0.5 1e-12\n0.4 2e-12\n");
  EXPECT_THROW(ParseIVTable(order, "bad"), ParseError);
  std::istringstream single("0.5 1e-12\n");
  EXPECT_THROW(ParseIVTable(single, "bad"), ParseError);
}

TEST(EnergyTest, ReferenceExample) {
  // I(1 V) = 0.5 nA, tau = 1 ms, I R = 2 V_th: E = 1 V * 0.5 nA * ln2 ms.
  const DeviceIVTable table({{0.5, 1e-12}, {1.0, 0.5e-9}, {1.5, 1e-9}});
  const double e = EnergyPerSpike(Reference(), table, 1.0);
  EXPECT_NEAR(e, 0.5e-9 * 1e-3 * std::log(2.0), 1e-24);
  EXPECT_NEAR(e * 1e15, 346.57, 0.01);
}

TEST(EnergyTest, SubcriticalHasNoCycle) {
  EXPECT_THROW(EnergyPerSpike(Reference(), TwoDecades(), 0.7),
               NoSpikeCycleError);
}

TEST(EnergyTest, SweepMarksSubcriticalPoints) {
  const auto sweep = EnergySweep(Reference(), TwoDecades(), 0.5, 1.0, 6);
  ASSERT_EQ(sweep.size(), 6u);
  for (const auto& p : sweep) EXPECT_FALSE(p.energy_j.has_value());
  EXPECT_FALSE(MeanEnergy(sweep).has_value());
}

TEST(EnergyTest, SinglePointSweepMatchesEnergyPerSpike) {
  const DeviceIVTable table({{0.5, 1e-12}, {1.0, 0.5e-9}, {1.5, 1e-9}});
  const auto sweep = EnergySweep(Reference(), table, 1.2, 1.2, 1);
  ASSERT_EQ(sweep.size(), 1u);
  ASSERT_TRUE(sweep[0].energy_j);
  EXPECT_EQ(*sweep[0].energy_j, EnergyPerSpike(Reference(), table, 1.2));
  EXPECT_THROW(EnergySweep(Reference(), table, 1.2, 1.3, 1), InvalidArgument);
  EXPECT_THROW(EnergySweep(Reference(), table, 0.4, 1.3, 5), RangeError);
}

TEST(EnergyTest, LedgerIdentityOverCycles) {
  const DeviceIVTable table({{0.5, 1e-12}, {1.0, 0.5e-9}, {1.5, 1e-9}});
  for (const double v : {1.0, 1.2, 1.37, 1.5}) {
    const double per_spike = EnergyPerSpike(Reference(), table, v);
    for (const std::size_t n : {1u, 10u, 1000u}) {
      const auto ledger = AccumulateCycles(Reference(), table, v, n);
      EXPECT_EQ(ledger.spike_count(), n);
      EXPECT_NEAR(ledger.total_energy_j() / (n * per_spike), 1.0, 1e-9);
      EXPECT_NEAR(*ledger.energy_per_spike_j() / per_spike, 1.0, 1e-9);
    }
  }
}

TEST(EnergyLedgerTest, MonotoneAndGuarded) {
  EnergyLedger ledger;
  EXPECT_FALSE(ledger.energy_per_spike_j());
  double last = 0.0;
  for (int k = 0; k < 10; ++k) {
    ledger.Charge(1e-9 * k, 1e-3);
    EXPECT_GE(ledger.total_energy_j(), last);
    last = ledger.total_energy_j();
  }
  EXPECT_FALSE(ledger.energy_per_spike_j());
  ledger.RecordSpikes(3);
  EXPECT_NEAR(*ledger.energy_per_spike_j(), last / 3.0, 1e-30);
  EXPECT_THROW(ledger.Charge(-1.0, 1.0), InvalidArgument);
}

TEST(FrequencySweepTest, ZeroBelowOnsetThenStrictlyIncreasing) {
  const auto table = LoadIVTable(BTBT_DATA_DIR "/reference_iv.txt");
  NeuronParams p = Reference();
  p.membrane_capacitance_f = 8.96e-15;
  const auto sweep = FrequencySweep(p, table, 0.3, 1.6, 131, false);
  bool onset = false;
  double last = 0.0;
  for (const auto& point : sweep) {
    if (!onset && point.closed_form_hz > 0.0) onset = true;
    if (!onset) {
      EXPECT_EQ(point.closed_form_hz, 0.0);
      EXPECT_LE(point.current_a, p.critical_current());
    } else {
      EXPECT_GT(point.closed_form_hz, last) << point.drain_voltage_v;
    }
    last = point.closed_form_hz;
  }
  EXPECT_TRUE(onset);
  EXPECT_EQ(sweep.front().closed_form_hz, 0.0);
}

TEST(FrequencySweepTest, SimulatedColumnTracksClosedForm) {
  const auto table = LoadIVTable(BTBT_DATA_DIR "/reference_iv.txt");
  NeuronParams p = Reference();
  p.membrane_capacitance_f = 8.96e-15;
  const auto sweep = FrequencySweep(p, table, 0.4, 1.6, 13, true);
  for (const auto& point : sweep) {
    ASSERT_TRUE(point.simulated_hz);
    if (point.closed_form_hz == 0.0) {
      EXPECT_EQ(*point.simulated_hz, 0.0);
    } else {
      EXPECT_LT(std::abs(*point.simulated_hz - point.closed_form_hz) /
                    point.closed_form_hz,
                0.01);
    }
  }
}

TEST(ReferenceCalibrationTest, MeanEnergyOverOperatingRange) {
  const auto table = LoadIVTable(BTBT_DATA_DIR "/reference_iv.txt");
  NeuronParams p = Reference();
  p.membrane_capacitance_f = 8.96e-15;
  const auto sweep = EnergySweep(p, table, 0.8, 1.5, 15);
  const auto mean = MeanEnergy(sweep);
  ASSERT_TRUE(mean);
  EXPECT_NEAR(*mean, 2.74e-15, 0.274e-15);
}

}  // namespace
}  // namespace btbt
