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

#ifndef BTBT_NEURON_H_
#define BTBT_NEURON_H_

#include <optional>

#include "btbt/spike_record.h"

namespace btbt {

// Circuit parameters of the behavioral LIF model: a leak resistor and
// membrane capacitor in parallel, resting at E_L, firing at V_th.
struct NeuronParams {
  double leak_resistance_ohm = 1e9;
  double membrane_capacitance_f = 1e-12;
  double resting_potential_v = 0.0;
  double firing_threshold_v = 0.25;
  // Dead time after a spike. Also the additive time offset of the
  // closed-form period.
  double refractory_time_s = 0.0;

  double tau_m() const { return leak_resistance_ohm * membrane_capacitance_f; }

  // Smallest constant current whose steady state exceeds threshold.
  double critical_current() const {
    return (firing_threshold_v - resting_potential_v) / leak_resistance_ohm;
  }

  // Throws InvalidArgument naming the first violated invariant.
  void Validate() const;
};

struct NeuronState {
  double membrane_potential_v = 0.0;
  // Empty until the first spike.
  std::optional<double> time_since_spike_s;
  bool in_refractory = false;

  static NeuronState AtRest(const NeuronParams& params) {
    return NeuronState{params.resting_potential_v, std::nullopt, false};
  }

  friend bool operator==(const NeuronState&, const NeuronState&) = default;
};

struct StepResult {
  NeuronState state;
  bool spiked = false;
};

// One forward-Euler step of C dV/dt = -(V - E_L)/R_L + I. A step that ends
// at or above threshold fires and resets to E_L. While refractory the
// membrane is held at E_L and input is ignored.
StepResult LifStep(const NeuronState& state, const NeuronParams& params,
                   double input_current_a, double dt_s);

enum class Regime { kSubcritical, kSpiking };

struct FrequencyResult {
  double frequency_hz = 0.0;
  Regime regime = Regime::kSubcritical;
};

// Steady firing rate under constant current:
//   f = 1 / (t_ref + tau_m * ln(I R_L / (I R_L - (V_th - E_L)))).
// Zero (subcritical) when I R_L <= V_th - E_L.
FrequencyResult ClosedFormFrequency(const NeuronParams& params,
                                    double input_current_a);

// Largest step accepted by SimulateSingleNeuron.
inline double MaxStep(const NeuronParams& params) {
  return params.tau_m() / 100.0;
}

// Integrates from rest for `duration_s` under constant current and returns
// the spike train of neuron 0. Spike times are step end times.
SpikeRecord SimulateSingleNeuron(const NeuronParams& params,
                                 double input_current_a, double duration_s,
                                 double dt_s);

}  // namespace btbt

#endif  // BTBT_NEURON_H_
