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

#ifndef BTBT_LEARNING_H_
#define BTBT_LEARNING_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "btbt/encoding.h"
#include "btbt/network.h"
#include "btbt/spike_record.h"

namespace btbt {

enum class SupervisionMode { kTargetOnly, kTargetAndRival };

// Defaults are the values tuned for the 16x3 Iris network.
struct StdpParams {
  double a_plus = 1.0;
  double a_minus = 3.0;
  double tau_plus_s = 5e-3;
  double learning_rate = 5e-6;
  SupervisionMode supervision = SupervisionMode::kTargetAndRival;

  void Validate() const;
};

// Supervised update for one presented sample.
//
// Target column: every presynaptic spike at t_pre is paired with the first
// target spike at t_post >= t_pre; if t_post - t_pre <= tau_plus the synapse
// gains lr * a_plus * exp(-(t_post - t_pre) / tau_plus). If the target
// stayed silent, each synapse instead gains lr * a_plus * rate * tau_plus,
// with rate the presynaptic rate over the presentation window.
//
// Rival columns (kTargetAndRival only, rivals that fired): the same causal
// pairing with amplitude -lr * a_minus.
//
// Results are clipped to [w_min, w_max]. `duration_s` is the presentation
// window used for the rate term.
SynapseMatrix StdpUpdate(const SynapseMatrix& weights,
                         const SpikeRecord& input_spikes,
                         const SpikeRecord& output_spikes, std::size_t label,
                         const StdpParams& params, double duration_s);

struct TrainingConfig {
  NetworkConfig network;
  CoderShape coder;
  double w_min = 0.0;
  double w_max = 1.0;
  double current_scale_a = 5e-8;
  // Initial weights are uniform in [w_init_min, w_init_max].
  double w_init_min = 0.0;
  double w_init_max = 0.1;

  void Validate() const;
};

struct DataSplit {
  std::vector<IrisSample> train;
  std::vector<IrisSample> test;
};

// Per class, a seeded shuffle; the first half (rounded up) goes to train.
DataSplit StratifiedSplit(std::span<const IrisSample> samples,
                          std::uint64_t seed);

struct TrainingReport {
  // Held-out accuracy after each epoch.
  std::vector<double> test_accuracy;
  std::vector<double> train_accuracy;
  PopulationCoder coder;
  SynapseMatrix weights;
};

// Splits with StratifiedSplit(seed), fits the coder on the training half,
// then for each epoch shuffles the training half, presents every sample
// with RunNetwork + StdpUpdate, and evaluates both halves.
TrainingReport Train(std::span<const IrisSample> dataset,
                     const TrainingConfig& config, const StdpParams& stdp,
                     std::size_t epochs, std::uint64_t seed);

// Fraction of samples classified as their label; no decision is wrong.
double Evaluate(std::span<const IrisSample> samples,
                const PopulationCoder& coder, const SynapseMatrix& weights,
                const NetworkConfig& config);

// `epoch,accuracy` rows, epochs numbered from 1.
void WriteLearningCurveCsv(std::ostream& out,
                           std::span<const double> accuracy);

// Learning sanity experiment: MakeSeparableToySet(kToySamplesPerClass)
// trained on a two-output network for kToyEpochs at kToyLearningRate.
inline constexpr std::size_t kToySamplesPerClass = 50;
inline constexpr std::size_t kToyEpochs = 20;
inline constexpr double kToyLearningRate = 1e-5;

// `base` narrowed to two outputs.
TrainingConfig ToyTrainingConfig(TrainingConfig base);

struct GridPoint {
  double learning_rate = 0.0;
  double a_minus = 0.0;
  double final_test_accuracy = 0.0;
};

// Trains once per (learning_rate, a_minus) pair and returns every result;
// the best is the first with the highest accuracy.
std::vector<GridPoint> GridSearch(std::span<const IrisSample> dataset,
                                  const TrainingConfig& config,
                                  const StdpParams& base,
                                  std::span<const double> learning_rates,
                                  std::span<const double> a_minus_values,
                                  std::size_t epochs, std::uint64_t seed);

}  // namespace btbt

#endif  // BTBT_LEARNING_H_
