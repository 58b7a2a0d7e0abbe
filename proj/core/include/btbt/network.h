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

#ifndef BTBT_NETWORK_H_
#define BTBT_NETWORK_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "btbt/neuron.h"
#include "btbt/spike_record.h"

namespace btbt {

// Feedforward weights, rows = inputs, columns = outputs. Every stored weight
// is kept inside [w_min, w_max].
class SynapseMatrix {
 public:
  SynapseMatrix(std::size_t inputs, std::size_t outputs, double w_min,
                double w_max, double current_scale_a, double initial = 0.0);

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return outputs_; }
  double w_min() const { return w_min_; }
  double w_max() const { return w_max_; }
  // Amperes delivered per unit weight during one presynaptic pulse.
  double current_scale_a() const { return current_scale_a_; }

  double at(std::size_t input, std::size_t output) const {
    return weights_[input * outputs_ + output];
  }
  // Stores `value` clipped to the bounds. Non-finite values throw.
  void Set(std::size_t input, std::size_t output, double value);
  void Add(std::size_t input, std::size_t output, double delta) {
    Set(input, output, at(input, output) + delta);
  }

  std::span<const double> values() const { return weights_; }

  friend bool operator==(const SynapseMatrix&, const SynapseMatrix&) = default;

 private:
  std::size_t inputs_;
  std::size_t outputs_;
  double w_min_;
  double w_max_;
  double current_scale_a_;
  std::vector<double> weights_;
};

// One row per input, comma-separated, full round-trip precision.
void WriteWeightsCsv(std::ostream& out, const SynapseMatrix& weights);
// Shape must match `like`; bounds and scale are taken from it.
SynapseMatrix ReadWeightsCsv(std::istream& in, const SynapseMatrix& like);

enum class InhibitionMode {
  kHardReset,    // rivals snap to E_L
  kSubtractive,  // rivals drop by inhibition_strength_v, floored at E_L
};

enum class InputMode {
  kOde,         // input neurons integrated with LifStep
  kClosedForm,  // regular trains at the closed-form period
};

struct NetworkConfig {
  std::size_t input_count = 16;
  std::size_t output_count = 3;
  InhibitionMode inhibition = InhibitionMode::kHardReset;
  double inhibition_strength_v = 0.0;
  InputMode input_mode = InputMode::kOde;
  NeuronParams neuron_params;
  double dt_s = 1e-5;
  double duration_s = 0.02;

  std::size_t steps() const;
  void Validate() const;
};

// Each input neuron is an independent LIF driven by a constant current.
SpikeRecord InputLayerSpikes(std::span<const double> input_currents_a,
                             const NetworkConfig& config);

struct NetworkRun {
  SpikeRecord input_spikes;
  SpikeRecord output_spikes;
};

// Clock-driven run. Within a tick: presynaptic pulses are summed into a
// one-tick current per output, outputs are stepped in ascending index, and
// every output that fired then inhibits all the others.
NetworkRun RunNetwork(std::span<const double> input_currents_a,
                      const SynapseMatrix& weights,
                      const NetworkConfig& config);

// Same, with a precomputed input layer.
SpikeRecord RunOutputLayer(const SpikeRecord& input_spikes,
                           const SynapseMatrix& weights,
                           const NetworkConfig& config);

// Index of the output with the most spikes, lowest index on ties. Empty
// ("no decision") when nothing fired.
std::optional<std::size_t> Classify(const SpikeRecord& output_spikes);
std::optional<std::size_t> Classify(std::span<const std::size_t> counts);

}  // namespace btbt

#endif  // BTBT_NETWORK_H_
