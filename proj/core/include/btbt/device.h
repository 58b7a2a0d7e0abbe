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

#ifndef BTBT_DEVICE_H_
#define BTBT_DEVICE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "btbt/neuron.h"

namespace btbt {

// Energy spent by the reset and spike circuit per firing event. Taken from
// transistor-level simulation, not computed here.
inline constexpr double kResetCircuitEnergyJ = 0.48e-15;

struct IvKnot {
  double drain_voltage_v = 0.0;
  double current_a = 0.0;
};

// Drain voltage to tunneling input current, sampled on knots. Immutable
// once built.
class DeviceIVTable {
 public:
  // Throws InvalidArgument unless voltages strictly increase, there are at
  // least two knots, and currents are finite, non-negative, non-decreasing.
  explicit DeviceIVTable(std::vector<IvKnot> knots, std::string source = {});

  std::span<const IvKnot> knots() const { return knots_; }
  const std::string& source() const { return source_; }
  double min_voltage() const { return knots_.front().drain_voltage_v; }
  double max_voltage() const { return knots_.back().drain_voltage_v; }
  // True when every current is positive, so interpolation runs in log space.
  bool log_interpolated() const { return log_space_; }

 private:
  std::vector<IvKnot> knots_;
  std::string source_;
  bool log_space_ = false;
};

// Text format: optional `#` comment lines, then `<volts> <amperes>` rows.
DeviceIVTable ParseIVTable(std::istream& in, const std::string& source_name);
DeviceIVTable LoadIVTable(const std::filesystem::path& path);

// Piecewise-linear in (V, ln I) when all currents are positive, otherwise
// in (V, I). Exact at knots. Throws RangeError outside the table.
double IvLookup(const DeviceIVTable& table, double drain_voltage_v);

// Accumulated supply energy and spike count over a run.
class EnergyLedger {
 public:
  // Adds power * duration. Both must be finite and non-negative.
  void Charge(double power_w, double duration_s);
  void RecordSpikes(std::size_t count = 1);

  double total_energy_j() const { return total_energy_j_; }
  std::size_t spike_count() const { return spike_count_; }
  // Empty until at least one spike is recorded.
  std::optional<double> energy_per_spike_j() const;

 private:
  double total_energy_j_ = 0.0;
  std::size_t spike_count_ = 0;
};

// V_D * I(V_D) / f under constant bias. Throws NoSpikeCycleError when the
// bias is subcritical.
double EnergyPerSpike(const NeuronParams& params, const DeviceIVTable& table,
                      double drain_voltage_v);

// Ledger after `cycles` full spike cycles at constant bias.
EnergyLedger AccumulateCycles(const NeuronParams& params,
                              const DeviceIVTable& table,
                              double drain_voltage_v, std::size_t cycles);

struct EnergyPoint {
  double drain_voltage_v = 0.0;
  std::optional<double> energy_j;  // empty when subcritical
};

// Uniform grid of `n_points` over [v_min, v_max], endpoints included.
std::vector<EnergyPoint> EnergySweep(const NeuronParams& params,
                                     const DeviceIVTable& table, double v_min,
                                     double v_max, std::size_t n_points);

// Mean over the spiking points of a sweep; empty if none spike.
std::optional<double> MeanEnergy(std::span<const EnergyPoint> sweep);

struct FrequencyPoint {
  double drain_voltage_v = 0.0;
  double current_a = 0.0;
  double closed_form_hz = 0.0;
  std::optional<double> simulated_hz;
};

// f vs V_D over a uniform grid. With `simulate`, each point is also
// integrated with SimulateSingleNeuron at dt = min(tau_m, period) / 1000
// for about 100 periods (100 tau_m when subcritical).
std::vector<FrequencyPoint> FrequencySweep(const NeuronParams& params,
                                           const DeviceIVTable& table,
                                           double v_min, double v_max,
                                           std::size_t n_points,
                                           bool simulate);

// `v_drain_V,i_in_A,f_closed_Hz,f_sim_Hz`; f_sim is blank when absent.
void WriteFrequencySweepCsv(std::ostream& out,
                            std::span<const FrequencyPoint> sweep);
// `v_drain_V,energy_per_spike_J`; energy is blank when subcritical.
void WriteEnergySweepCsv(std::ostream& out,
                         std::span<const EnergyPoint> sweep);

// Grid helper shared by the sweeps; n_points == 1 yields {v_min}.
std::vector<double> VoltageGrid(double v_min, double v_max,
                                std::size_t n_points);

}  // namespace btbt

#endif  // BTBT_DEVICE_H_
