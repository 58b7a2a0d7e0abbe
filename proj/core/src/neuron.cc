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

#include "btbt/neuron.h"

#include <cmath>
#include <string>

#include "btbt/error.h"

namespace btbt {

void NeuronParams::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("neuron params: ") + what);
  };
  require(std::isfinite(leak_resistance_ohm) && leak_resistance_ohm > 0.0,
          "leak_resistance must be finite and > 0");
  require(std::isfinite(membrane_capacitance_f) && membrane_capacitance_f > 0.0,
          "membrane_capacitance must be finite and > 0");
  require(std::isfinite(resting_potential_v), "resting_potential not finite");
  require(std::isfinite(firing_threshold_v), "firing_threshold not finite");
  require(firing_threshold_v > resting_potential_v,
          "firing_threshold must exceed resting_potential");
  require(std::isfinite(refractory_time_s) && refractory_time_s >= 0.0,
          "refractory_time must be finite and >= 0");
  const double tau = tau_m();
  require(std::isfinite(tau) && tau > 0.0, "tau_m must be finite and > 0");
}

StepResult LifStep(const NeuronState& state, const NeuronParams& params,
                   double input_current_a, double dt_s) {
  if (!std::isfinite(input_current_a)) {
    throw InvalidArgument("LifStep: input current is not finite");
  }
  if (!std::isfinite(dt_s) || dt_s < 0.0) {
    throw InvalidArgument("LifStep: dt must be finite and >= 0");
  }
  if (dt_s == 0.0) return {state, false};

  NeuronState next = state;
  if (next.time_since_spike_s) *next.time_since_spike_s += dt_s;

  if (state.in_refractory) {
    next.membrane_potential_v = params.resting_potential_v;
    if (!next.time_since_spike_s ||
        *next.time_since_spike_s >= params.refractory_time_s) {
      next.in_refractory = false;
    }
    return {next, false};
  }

  const double v = state.membrane_potential_v;
  const double dv_dt = -(v - params.resting_potential_v) / params.tau_m() +
                       input_current_a / params.membrane_capacitance_f;
  next.membrane_potential_v = v + dt_s * dv_dt;

  if (next.membrane_potential_v >= params.firing_threshold_v) {
    next.membrane_potential_v = params.resting_potential_v;
    next.time_since_spike_s = 0.0;
    next.in_refractory = params.refractory_time_s > 0.0;
    return {next, true};
  }
  return {next, false};
}

FrequencyResult ClosedFormFrequency(const NeuronParams& params,
                                    double input_current_a) {
  params.Validate();
  if (!std::isfinite(input_current_a)) {
    throw InvalidArgument("ClosedFormFrequency: input current is not finite");
  }
  const double drive_v = input_current_a * params.leak_resistance_ohm;
  const double gap_v = params.firing_threshold_v - params.resting_potential_v;
  if (drive_v <= gap_v) return {0.0, Regime::kSubcritical};

  // ln(drive / (drive - gap)) == -log1p(-gap / drive)
  const double charge_time_s = -params.tau_m() * std::log1p(-gap_v / drive_v);
  const double period_s = params.refractory_time_s + charge_time_s;
  if (!(period_s > 0.0) || !std::isfinite(period_s)) {
    return {0.0, Regime::kSubcritical};
  }
  return {1.0 / period_s, Regime::kSpiking};
}

SpikeRecord SimulateSingleNeuron(const NeuronParams& params,
                                 double input_current_a, double duration_s,
                                 double dt_s) {
  params.Validate();
  if (!std::isfinite(duration_s) || duration_s <= 0.0) {
    throw InvalidArgument("SimulateSingleNeuron: duration must be > 0");
  }
  if (!std::isfinite(dt_s) || dt_s <= 0.0) {
    throw InvalidArgument("SimulateSingleNeuron: dt must be > 0");
  }
  if (dt_s > MaxStep(params) * (1.0 + 1e-12)) {
    throw StepSizeError("SimulateSingleNeuron: dt " + std::to_string(dt_s) +
                        " s exceeds tau_m/100 = " +
                        std::to_string(MaxStep(params)) + " s");
  }
  if (!std::isfinite(input_current_a)) {
    throw InvalidArgument("SimulateSingleNeuron: input current is not finite");
  }

  const auto steps =
      static_cast<long long>(std::floor(duration_s / dt_s + 1e-9));
  SpikeRecord record(1);
  NeuronState state = NeuronState::AtRest(params);
  for (long long k = 0; k < steps; ++k) {
    auto [next, spiked] = LifStep(state, params, input_current_a, dt_s);
    state = next;
    if (spiked) record.Add(static_cast<double>(k + 1) * dt_s, 0);
  }
  return record;
}

}  // namespace btbt
