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

#include "btbt/network.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <tuple>

#include "btbt/error.h"
#include "text_util.h"

namespace btbt {

SynapseMatrix::SynapseMatrix(std::size_t inputs, std::size_t outputs,
                             double w_min, double w_max,
                             double current_scale_a, double initial)
    : inputs_(inputs),
      outputs_(outputs),
      w_min_(w_min),
      w_max_(w_max),
      current_scale_a_(current_scale_a) {
  if (inputs == 0 || outputs == 0) {
    throw DimensionError("synapse matrix needs at least one row and column");
  }
  if (!std::isfinite(w_min) || !std::isfinite(w_max) || w_min > w_max) {
    throw InvalidArgument("synapse bounds need finite w_min <= w_max");
  }
  if (!std::isfinite(current_scale_a) || current_scale_a < 0.0) {
    throw InvalidArgument("synapse current scale must be finite and >= 0");
  }
  if (!std::isfinite(initial)) {
    throw InvalidArgument("initial weight is not finite");
  }
  weights_.assign(inputs * outputs, std::clamp(initial, w_min, w_max));
}

void SynapseMatrix::Set(std::size_t input, std::size_t output, double value) {
  if (input >= inputs_ || output >= outputs_) {
    throw DimensionError("synapse index out of range");
  }
  if (!std::isfinite(value)) throw InvalidArgument("weight is not finite");
  weights_[input * outputs_ + output] = std::clamp(value, w_min_, w_max_);
}

void WriteWeightsCsv(std::ostream& out, const SynapseMatrix& weights) {
  for (std::size_t i = 0; i < weights.inputs(); ++i) {
    for (std::size_t j = 0; j < weights.outputs(); ++j) {
      if (j > 0) out << ',';
      out << internal::FormatDouble(weights.at(i, j));
    }
    out << '\n';
  }
}

SynapseMatrix ReadWeightsCsv(std::istream& in, const SynapseMatrix& like) {
  SynapseMatrix result = like;
  std::string line;
  std::size_t line_no = 0;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = internal::Trim(line);
    if (trimmed.empty()) continue;
    const auto fields = internal::Split(trimmed, ',');
    if (fields.size() != like.outputs()) {
      throw DimensionError("weights csv line " + std::to_string(line_no) +
                           ": expected " + std::to_string(like.outputs()) +
                           " columns, found " + std::to_string(fields.size()));
    }
    if (row >= like.inputs()) {
      throw DimensionError("weights csv: more than " +
                           std::to_string(like.inputs()) + " rows");
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const auto w = internal::ParseDouble(fields[j]);
      if (!w) throw ParseError("weights csv", line_no, "bad number");
      if (*w < like.w_min() || *w > like.w_max()) {
        throw ParseError("weights csv", line_no, "weight outside bounds");
      }
      result.Set(row, j, *w);
    }
    ++row;
  }
  if (row != like.inputs()) {
    throw DimensionError("weights csv: expected " +
                         std::to_string(like.inputs()) + " rows, found " +
                         std::to_string(row));
  }
  return result;
}

std::size_t NetworkConfig::steps() const {
  return static_cast<std::size_t>(std::floor(duration_s / dt_s + 1e-9));
}

void NetworkConfig::Validate() const {
  if (input_count == 0 || output_count == 0) {
    throw InvalidArgument("network needs at least one input and one output");
  }
  neuron_params.Validate();
  if (!std::isfinite(dt_s) || dt_s <= 0.0) {
    throw InvalidArgument("network dt must be > 0");
  }
  if (!std::isfinite(duration_s) || duration_s < dt_s) {
    throw InvalidArgument("network duration must be >= dt");
  }
  if (dt_s > MaxStep(neuron_params) * (1.0 + 1e-12)) {
    throw StepSizeError("network dt exceeds tau_m/100");
  }
  if (!std::isfinite(inhibition_strength_v) || inhibition_strength_v < 0.0) {
    throw InvalidArgument("inhibition strength must be finite and >= 0");
  }
}

namespace {

void CheckCurrents(std::span<const double> currents,
                   const NetworkConfig& config) {
  if (currents.size() != config.input_count) {
    throw DimensionError("expected " + std::to_string(config.input_count) +
                         " input currents, got " +
                         std::to_string(currents.size()));
  }
  for (const double c : currents) {
    if (!std::isfinite(c) || c < 0.0) {
      throw InvalidArgument("input currents must be finite and >= 0");
    }
  }
}

// Ticks between spikes of the Euler-discretised neuron under constant
// current, counted from rest: V_n = E_L + I R (1 - (1 - h)^n), h = dt/tau.
// Returns 0 when the discrete trajectory never reaches threshold.
std::size_t ChargeTicks(const NeuronParams& p, double current_a, double dt_s) {
  const double drive_v = current_a * p.leak_resistance_ohm;
  const double gap_v = p.firing_threshold_v - p.resting_potential_v;
  if (drive_v <= gap_v) return 0;
  const double h = dt_s / p.tau_m();
  const double n = std::log1p(-gap_v / drive_v) / std::log1p(-h);
  auto ticks = static_cast<std::size_t>(std::ceil(n - 1e-9));
  ticks = std::max<std::size_t>(ticks, 1);
  // Settle rounding at the boundary against the exact recurrence.
  auto reaches = [&](std::size_t k) {
    return drive_v * -std::expm1(static_cast<double>(k) * std::log1p(-h)) >=
           gap_v;
  };
  while (ticks > 1 && reaches(ticks - 1)) --ticks;
  while (!reaches(ticks)) ++ticks;
  return ticks;
}

std::size_t RefractoryTicks(const NeuronParams& p, double dt_s) {
  if (p.refractory_time_s <= 0.0) return 0;
  // Mirrors LifStep's accumulate-and-compare countdown.
  double elapsed = 0.0;
  std::size_t ticks = 0;
  do {
    elapsed += dt_s;
    ++ticks;
  } while (elapsed < p.refractory_time_s);
  return ticks;
}

}  // namespace

SpikeRecord InputLayerSpikes(std::span<const double> input_currents_a,
                             const NetworkConfig& config) {
  config.Validate();
  CheckCurrents(input_currents_a, config);
  const NeuronParams& params = config.neuron_params;
  const std::size_t steps = config.steps();
  const double dt = config.dt_s;
  const std::size_t n = config.input_count;

  // (tick, neuron) pairs, emitted in tick-major order.
  std::vector<std::pair<std::size_t, std::size_t>> fires;
  if (config.input_mode == InputMode::kOde) {
    std::vector<NeuronState> states(n, NeuronState::AtRest(params));
    for (std::size_t k = 0; k < steps; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        auto [next, spiked] = LifStep(states[i], params, input_currents_a[i], dt);
        states[i] = next;
        if (spiked) fires.emplace_back(k, i);
      }
    }
  } else {
    const std::size_t refractory = RefractoryTicks(params, dt);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t charge = ChargeTicks(params, input_currents_a[i], dt);
      if (charge == 0) continue;
      // First spike ends tick charge - 1; later ones every period.
      for (std::size_t k = charge - 1; k < steps; k += refractory + charge) {
        fires.emplace_back(k, i);
      }
    }
    std::sort(fires.begin(), fires.end());
  }

  SpikeRecord record(n);
  for (const auto& [tick, id] : fires) {
    record.Add(static_cast<double>(tick + 1) * dt, id);
  }
  return record;
}

SpikeRecord RunOutputLayer(const SpikeRecord& input_spikes,
                           const SynapseMatrix& weights,
                           const NetworkConfig& config) {
  config.Validate();
  if (weights.inputs() != config.input_count ||
      weights.outputs() != config.output_count ||
      input_spikes.neuron_count() != config.input_count) {
    throw DimensionError("weights " + std::to_string(weights.inputs()) + "x" +
                         std::to_string(weights.outputs()) +
                         " do not match network " +
                         std::to_string(config.input_count) + "x" +
                         std::to_string(config.output_count));
  }
  const NeuronParams& params = config.neuron_params;
  const double dt = config.dt_s;
  const std::size_t steps = config.steps();
  const std::size_t outputs = config.output_count;
  const double scale = weights.current_scale_a();

  std::vector<NeuronState> states(outputs, NeuronState::AtRest(params));
  std::vector<double> pulse(outputs);
  std::vector<std::size_t> fired;
  SpikeRecord record(outputs);

  const auto events = input_spikes.events();
  std::size_t next_event = 0;
  auto tick_of = [dt](double t) {
    const double k = std::ceil(t / dt - 1e-9) - 1.0;
    return k < 0.0 ? std::size_t{0} : static_cast<std::size_t>(k);
  };

  for (std::size_t k = 0; k < steps; ++k) {
    std::fill(pulse.begin(), pulse.end(), 0.0);
    while (next_event < events.size() &&
           tick_of(events[next_event].time_s) <= k) {
      const std::size_t pre = events[next_event].neuron_id;
      for (std::size_t j = 0; j < outputs; ++j) {
        pulse[j] += weights.at(pre, j) * scale;
      }
      ++next_event;
    }

    fired.clear();
    for (std::size_t j = 0; j < outputs; ++j) {
      auto [next, spiked] = LifStep(states[j], params, pulse[j], dt);
      states[j] = next;
      if (spiked) fired.push_back(j);
    }

    const double t = static_cast<double>(k + 1) * dt;
    for (const std::size_t winner : fired) {
      record.Add(t, winner);
      for (std::size_t j = 0; j < outputs; ++j) {
        if (j == winner) continue;
        double& v = states[j].membrane_potential_v;
        if (config.inhibition == InhibitionMode::kHardReset) {
          v = params.resting_potential_v;
        } else {
          v = std::max(params.resting_potential_v,
                       v - config.inhibition_strength_v);
        }
      }
    }
  }
  return record;
}

NetworkRun RunNetwork(std::span<const double> input_currents_a,
                      const SynapseMatrix& weights,
                      const NetworkConfig& config) {
  NetworkRun run;
  run.input_spikes = InputLayerSpikes(input_currents_a, config);
  run.output_spikes = RunOutputLayer(run.input_spikes, weights, config);
  return run;
}

std::optional<std::size_t> Classify(std::span<const std::size_t> counts) {
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    if (!best || counts[j] > counts[*best]) best = j;
  }
  return best;
}

std::optional<std::size_t> Classify(const SpikeRecord& output_spikes) {
  const auto counts = output_spikes.CountsPerNeuron();
  return Classify(counts);
}

}  // namespace btbt
