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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "btbt/error.h"
#include "text_util.h"

namespace btbt {

DeviceIVTable::DeviceIVTable(std::vector<IvKnot> knots, std::string source)
    : knots_(std::move(knots)), source_(std::move(source)) {
  if (knots_.size() < 2) {
    throw InvalidArgument("IV table needs at least 2 knots");
  }
  log_space_ = true;
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    const auto& knot = knots_[k];
    if (!std::isfinite(knot.drain_voltage_v) || !std::isfinite(knot.current_a)) {
      throw InvalidArgument("IV table knot " + std::to_string(k) +
                            " is not finite");
    }
    if (knot.current_a < 0.0) {
      throw InvalidArgument("IV table knot " + std::to_string(k) +
                            " has negative current");
    }
    if (k > 0) {
      if (knot.drain_voltage_v <= knots_[k - 1].drain_voltage_v) {
        throw InvalidArgument("IV table voltages must strictly increase (knot " +
                              std::to_string(k) + ")");
      }
      if (knot.current_a < knots_[k - 1].current_a) {
        throw InvalidArgument("IV table currents must not decrease (knot " +
                              std::to_string(k) + ")");
      }
    }
    if (knot.current_a == 0.0) log_space_ = false;
  }
}

DeviceIVTable ParseIVTable(std::istream& in, const std::string& source_name) {
  std::vector<IvKnot> knots;
  std::string header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = internal::Trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      if (!knots.empty()) {
        throw ParseError(source_name, line_no, "comment after data rows");
      }
      if (header.empty()) header = std::string(internal::Trim(trimmed.substr(1)));
      continue;
    }
    std::istringstream row{std::string(trimmed)};
    std::string v_text, i_text, extra;
    if (!(row >> v_text >> i_text) || (row >> extra)) {
      throw ParseError(source_name, line_no,
                       "expected '<voltage_volts> <current_amperes>'");
    }
    const auto v = internal::ParseDouble(v_text);
    const auto i = internal::ParseDouble(i_text);
    if (!v || !i) throw ParseError(source_name, line_no, "bad number");
    if (*i < 0.0) throw ParseError(source_name, line_no, "negative current");
    if (!knots.empty()) {
      if (*v <= knots.back().drain_voltage_v) {
        throw ParseError(source_name, line_no, "voltage not increasing");
      }
      if (*i < knots.back().current_a) {
        throw ParseError(source_name, line_no, "current decreases");
      }
    }
    knots.push_back({*v, *i});
  }
  if (knots.size() < 2) {
    throw ParseError(source_name, 0, "need at least 2 data rows");
  }
  return DeviceIVTable(std::move(knots),
                       header.empty() ? source_name : header);
}

DeviceIVTable LoadIVTable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open IV table");
  return ParseIVTable(in, path.string());
}

double IvLookup(const DeviceIVTable& table, double drain_voltage_v) {
  if (!std::isfinite(drain_voltage_v) ||
      drain_voltage_v < table.min_voltage() ||
      drain_voltage_v > table.max_voltage()) {
    throw RangeError("drain voltage " + std::to_string(drain_voltage_v) +
                     " V outside IV table [" +
                     std::to_string(table.min_voltage()) + ", " +
                     std::to_string(table.max_voltage()) + "] V");
  }
  const auto knots = table.knots();
  const auto upper = std::upper_bound(
      knots.begin(), knots.end(), drain_voltage_v,
      [](double v, const IvKnot& k) { return v < k.drain_voltage_v; });
  // upper > begin because drain_voltage_v >= min_voltage.
  const IvKnot& lo = *(upper - 1);
  if (lo.drain_voltage_v == drain_voltage_v || upper == knots.end()) {
    return lo.current_a;
  }
  const IvKnot& hi = *upper;
  if (lo.current_a == hi.current_a) return lo.current_a;

  const double frac = (drain_voltage_v - lo.drain_voltage_v) /
                      (hi.drain_voltage_v - lo.drain_voltage_v);
  double current = 0.0;
  if (table.log_interpolated()) {
    const double log_lo = std::log(lo.current_a);
    const double log_hi = std::log(hi.current_a);
    current = std::exp(log_lo + frac * (log_hi - log_lo));
  } else {
    current = lo.current_a + frac * (hi.current_a - lo.current_a);
  }
  return std::clamp(current, lo.current_a, hi.current_a);
}

void EnergyLedger::Charge(double power_w, double duration_s) {
  if (!std::isfinite(power_w) || power_w < 0.0 || !std::isfinite(duration_s) ||
      duration_s < 0.0) {
    throw InvalidArgument("EnergyLedger: power and duration must be >= 0");
  }
  total_energy_j_ += power_w * duration_s;
}

void EnergyLedger::RecordSpikes(std::size_t count) { spike_count_ += count; }

std::optional<double> EnergyLedger::energy_per_spike_j() const {
  if (spike_count_ == 0) return std::nullopt;
  return total_energy_j_ / static_cast<double>(spike_count_);
}

namespace {

struct Bias {
  double current_a;
  FrequencyResult frequency;
};

Bias BiasAt(const NeuronParams& params, const DeviceIVTable& table,
            double drain_voltage_v) {
  const double current = IvLookup(table, drain_voltage_v);
  return {current, ClosedFormFrequency(params, current)};
}

}  // namespace

double EnergyPerSpike(const NeuronParams& params, const DeviceIVTable& table,
                      double drain_voltage_v) {
  const Bias bias = BiasAt(params, table, drain_voltage_v);
  if (bias.frequency.regime == Regime::kSubcritical) {
    throw NoSpikeCycleError("no spike cycle at V_D = " +
                            std::to_string(drain_voltage_v) + " V");
  }
  return drain_voltage_v * bias.current_a / bias.frequency.frequency_hz;
}

EnergyLedger AccumulateCycles(const NeuronParams& params,
                              const DeviceIVTable& table,
                              double drain_voltage_v, std::size_t cycles) {
  const Bias bias = BiasAt(params, table, drain_voltage_v);
  if (bias.frequency.regime == Regime::kSubcritical) {
    throw NoSpikeCycleError("no spike cycle at V_D = " +
                            std::to_string(drain_voltage_v) + " V");
  }
  const double power_w = drain_voltage_v * bias.current_a;
  const double cycle_s = 1.0 / bias.frequency.frequency_hz;
  EnergyLedger ledger;
  for (std::size_t n = 0; n < cycles; ++n) {
    ledger.Charge(power_w, cycle_s);
    ledger.RecordSpikes();
  }
  return ledger;
}

std::vector<double> VoltageGrid(double v_min, double v_max,
                                std::size_t n_points) {
  if (!std::isfinite(v_min) || !std::isfinite(v_max) || v_min > v_max) {
    throw InvalidArgument("voltage grid needs finite v_min <= v_max");
  }
  if (n_points == 0 || (n_points == 1 && v_min != v_max)) {
    throw InvalidArgument("voltage grid needs n_points >= 2");
  }
  std::vector<double> grid(n_points);
  if (n_points == 1) {
    grid[0] = v_min;
    return grid;
  }
  const double step = (v_max - v_min) / static_cast<double>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k) {
    grid[k] = v_min + step * static_cast<double>(k);
  }
  grid.back() = v_max;
  return grid;
}

std::vector<EnergyPoint> EnergySweep(const NeuronParams& params,
                                     const DeviceIVTable& table, double v_min,
                                     double v_max, std::size_t n_points) {
  params.Validate();
  const auto grid = VoltageGrid(v_min, v_max, n_points);
  if (v_min < table.min_voltage() || v_max > table.max_voltage()) {
    throw RangeError("energy sweep range outside IV table");
  }
  std::vector<EnergyPoint> points;
  points.reserve(grid.size());
  for (const double v : grid) {
    const Bias bias = BiasAt(params, table, v);
    EnergyPoint point{v, std::nullopt};
    if (bias.frequency.regime == Regime::kSpiking) {
      point.energy_j = v * bias.current_a / bias.frequency.frequency_hz;
    }
    points.push_back(point);
  }
  return points;
}

std::optional<double> MeanEnergy(std::span<const EnergyPoint> sweep) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : sweep) {
    if (p.energy_j) {
      sum += *p.energy_j;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::vector<FrequencyPoint> FrequencySweep(const NeuronParams& params,
                                           const DeviceIVTable& table,
                                           double v_min, double v_max,
                                           std::size_t n_points,
                                           bool simulate) {
  params.Validate();
  const auto grid = VoltageGrid(v_min, v_max, n_points);
  if (v_min < table.min_voltage() || v_max > table.max_voltage()) {
    throw RangeError("frequency sweep range outside IV table");
  }
  std::vector<FrequencyPoint> points;
  points.reserve(grid.size());
  for (const double v : grid) {
    const Bias bias = BiasAt(params, table, v);
    FrequencyPoint point{v, bias.current_a, bias.frequency.frequency_hz,
                         std::nullopt};
    if (simulate) {
      const double tau = params.tau_m();
      double dt = tau / 1000.0;
      double duration = 100.0 * tau;
      if (bias.frequency.regime == Regime::kSpiking) {
        const double period = 1.0 / bias.frequency.frequency_hz;
        dt = std::min(tau, period) / 1000.0;
        duration = 101.0 * period;
      }
      const auto record =
          SimulateSingleNeuron(params, bias.current_a, duration, dt);
      point.simulated_hz = EmpiricalFrequency(record.TimesOf(0));
    }
    points.push_back(point);
  }
  return points;
}

void WriteFrequencySweepCsv(std::ostream& out,
                            std::span<const FrequencyPoint> sweep) {
  out << "v_drain_V,i_in_A,f_closed_Hz,f_sim_Hz\n";
  for (const auto& p : sweep) {
    out << internal::FormatDouble(p.drain_voltage_v) << ','
        << internal::FormatDouble(p.current_a) << ','
        << internal::FormatDouble(p.closed_form_hz) << ',';
    if (p.simulated_hz) out << internal::FormatDouble(*p.simulated_hz);
    out << '\n';
  }
}

void WriteEnergySweepCsv(std::ostream& out,
                         std::span<const EnergyPoint> sweep) {
  out << "v_drain_V,energy_per_spike_J\n";
  for (const auto& p : sweep) {
    out << internal::FormatDouble(p.drain_voltage_v) << ',';
    if (p.energy_j) out << internal::FormatDouble(*p.energy_j);
    out << '\n';
  }
}

}  // namespace btbt
