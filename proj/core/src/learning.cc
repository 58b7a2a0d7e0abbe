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

#include "btbt/learning.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <string>

#include "btbt/error.h"
#include "random_util.h"
#include "text_util.h"

namespace btbt {

void StdpParams::Validate() const {
  if (!std::isfinite(a_plus) || a_plus < 0.0 || !std::isfinite(a_minus) ||
      a_minus < 0.0) {
    throw InvalidArgument("stdp amplitudes must be finite and >= 0");
  }
  if (!std::isfinite(tau_plus_s) || tau_plus_s <= 0.0) {
    throw InvalidArgument("stdp tau_plus must be > 0");
  }
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) {
    throw InvalidArgument("stdp learning_rate must be finite and >= 0");
  }
}

namespace {

// Sum over presynaptic spikes of input `pre` of exp(-dt / tau) where dt is
// the lag to the first postsynaptic spike at or after it, within tau.
void AccumulateCausal(std::span<const SpikeEvent> pre_events,
                      std::span<const double> post_times, double tau_s,
                      std::vector<double>& kernel_sum) {
  if (post_times.empty()) return;
  const double window = tau_s * (1.0 + 1e-9);
  for (const auto& e : pre_events) {
    const auto it =
        std::lower_bound(post_times.begin(), post_times.end(), e.time_s);
    if (it == post_times.end()) continue;
    const double lag = *it - e.time_s;
    if (lag <= window) kernel_sum[e.neuron_id] += std::exp(-lag / tau_s);
  }
}

}  // namespace

SynapseMatrix StdpUpdate(const SynapseMatrix& weights,
                         const SpikeRecord& input_spikes,
                         const SpikeRecord& output_spikes, std::size_t label,
                         const StdpParams& params, double duration_s) {
  params.Validate();
  if (label >= weights.outputs()) {
    throw InvalidArgument("label " + std::to_string(label) +
                          " out of range for " +
                          std::to_string(weights.outputs()) + " outputs");
  }
  if (input_spikes.neuron_count() != weights.inputs() ||
      output_spikes.neuron_count() != weights.outputs()) {
    throw DimensionError("spike records do not match weight shape");
  }
  if (!std::isfinite(duration_s) || duration_s <= 0.0) {
    throw InvalidArgument("presentation duration must be > 0");
  }

  SynapseMatrix updated = weights;
  const double lr = params.learning_rate;
  const auto pre = input_spikes.events();
  std::vector<double> kernel(weights.inputs());

  const auto target_times = output_spikes.TimesOf(label);
  if (!target_times.empty()) {
    AccumulateCausal(pre, target_times, params.tau_plus_s, kernel);
    for (std::size_t i = 0; i < weights.inputs(); ++i) {
      updated.Add(i, label, lr * params.a_plus * kernel[i]);
    }
  } else {
    // Teaching term: the silent target is pulled toward active inputs.
    const auto counts = input_spikes.CountsPerNeuron();
    for (std::size_t i = 0; i < weights.inputs(); ++i) {
      const double rate_hz = static_cast<double>(counts[i]) / duration_s;
      updated.Add(i, label, lr * params.a_plus * rate_hz * params.tau_plus_s);
    }
  }

  if (params.supervision == SupervisionMode::kTargetAndRival) {
    for (std::size_t j = 0; j < weights.outputs(); ++j) {
      if (j == label) continue;
      const auto rival_times = output_spikes.TimesOf(j);
      if (rival_times.empty()) continue;
      std::fill(kernel.begin(), kernel.end(), 0.0);
      AccumulateCausal(pre, rival_times, params.tau_plus_s, kernel);
      for (std::size_t i = 0; i < weights.inputs(); ++i) {
        updated.Add(i, j, -lr * params.a_minus * kernel[i]);
      }
    }
  }
  return updated;
}

void TrainingConfig::Validate() const {
  network.Validate();
  if (!std::isfinite(w_min) || !std::isfinite(w_max) || w_min > w_max) {
    throw InvalidArgument("weight bounds need finite w_min <= w_max");
  }
  if (!std::isfinite(current_scale_a) || current_scale_a < 0.0) {
    throw InvalidArgument("current_scale must be finite and >= 0");
  }
  if (!std::isfinite(w_init_min) || !std::isfinite(w_init_max) ||
      w_init_min > w_init_max || w_init_min < w_min || w_init_max > w_max) {
    throw InvalidArgument("initial weight range must lie inside [w_min, w_max]");
  }
  if (!std::isfinite(coder.sigma) || coder.sigma <= 0.0) {
    throw InvalidArgument("coder sigma must be > 0");
  }
  if (!std::isfinite(coder.i_max_a) || coder.i_max_a < 0.0) {
    throw InvalidArgument("coder i_max must be finite and >= 0");
  }
}

DataSplit StratifiedSplit(std::span<const IrisSample> samples,
                          std::uint64_t seed) {
  std::map<std::size_t, std::vector<IrisSample>> by_class;
  for (const auto& s : samples) by_class[s.label].push_back(s);
  std::mt19937_64 rng(seed);
  DataSplit split;
  for (auto& [label, group] : by_class) {
    internal::Shuffle(std::span<IrisSample>(group), rng);
    const std::size_t n_train = (group.size() + 1) / 2;
    split.train.insert(split.train.end(), group.begin(),
                       group.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.insert(split.test.end(),
                      group.begin() + static_cast<std::ptrdiff_t>(n_train),
                      group.end());
  }
  return split;
}

namespace {

struct Presented {
  SpikeRecord inputs;
  std::size_t label;
};

std::vector<Presented> PresentAll(std::span<const IrisSample> samples,
                                  const PopulationCoder& coder,
                                  const NetworkConfig& config) {
  std::vector<Presented> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back({InputLayerSpikes(Encode(s, coder), config), s.label});
  }
  return out;
}

double Accuracy(std::span<const Presented> presented,
                const SynapseMatrix& weights, const NetworkConfig& config) {
  if (presented.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& p : presented) {
    const auto decision =
        Classify(RunOutputLayer(p.inputs, weights, config));
    if (decision && *decision == p.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(presented.size());
}

void CheckLabels(std::span<const IrisSample> samples, std::size_t outputs) {
  for (const auto& s : samples) {
    if (s.label >= outputs) {
      throw InvalidArgument("sample label " + std::to_string(s.label) +
                            " has no output neuron");
    }
  }
}

}  // namespace

TrainingReport Train(std::span<const IrisSample> dataset,
                     const TrainingConfig& config, const StdpParams& stdp,
                     std::size_t epochs, std::uint64_t seed) {
  if (dataset.empty()) throw InvalidArgument("Train: empty dataset");
  if (epochs == 0) throw InvalidArgument("Train: epochs must be >= 1");
  config.Validate();
  stdp.Validate();
  if (config.network.input_count != kEncodedWidth) {
    throw DimensionError("Train: network input_count must be " +
                         std::to_string(kEncodedWidth));
  }
  CheckLabels(dataset, config.network.output_count);

  const DataSplit split = StratifiedSplit(dataset, seed);
  const PopulationCoder coder = FitCoder(split.train, config.coder);
  const auto train = PresentAll(split.train, coder, config.network);
  const auto test = PresentAll(split.test, coder, config.network);

  SynapseMatrix weights(config.network.input_count,
                        config.network.output_count, config.w_min,
                        config.w_max, config.current_scale_a);
  std::mt19937_64 init_rng(seed ^ 0x5bd1e9955bd1e995ULL);
  for (std::size_t i = 0; i < weights.inputs(); ++i) {
    for (std::size_t j = 0; j < weights.outputs(); ++j) {
      weights.Set(i, j,
                  internal::Uniform(init_rng, config.w_init_min,
                                    config.w_init_max));
    }
  }

  std::mt19937_64 order_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(train.size());
  TrainingReport report{{}, {}, coder, weights};
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    internal::Shuffle(std::span<std::size_t>(order), order_rng);
    for (const std::size_t idx : order) {
      const auto& sample = train[idx];
      const auto outputs = RunOutputLayer(sample.inputs, weights, config.network);
      weights = StdpUpdate(weights, sample.inputs, outputs, sample.label, stdp,
                           config.network.duration_s);
    }
    report.test_accuracy.push_back(Accuracy(test, weights, config.network));
    report.train_accuracy.push_back(Accuracy(train, weights, config.network));
  }
  report.weights = weights;
  return report;
}

double Evaluate(std::span<const IrisSample> samples,
                const PopulationCoder& coder, const SynapseMatrix& weights,
                const NetworkConfig& config) {
  config.Validate();
  const auto presented = PresentAll(samples, coder, config);
  return Accuracy(presented, weights, config);
}

void WriteLearningCurveCsv(std::ostream& out,
                           std::span<const double> accuracy) {
  out << "epoch,accuracy\n";
  for (std::size_t e = 0; e < accuracy.size(); ++e) {
    out << (e + 1) << ',' << internal::FormatDouble(accuracy[e]) << '\n';
  }
}

TrainingConfig ToyTrainingConfig(TrainingConfig base) {
  base.network.output_count = 2;
  return base;
}

std::vector<GridPoint> GridSearch(std::span<const IrisSample> dataset,
                                  const TrainingConfig& config,
                                  const StdpParams& base,
                                  std::span<const double> learning_rates,
                                  std::span<const double> a_minus_values,
                                  std::size_t epochs, std::uint64_t seed) {
  std::vector<GridPoint> results;
  for (const double lr : learning_rates) {
    for (const double a_minus : a_minus_values) {
      StdpParams params = base;
      params.learning_rate = lr;
      params.a_minus = a_minus;
      const auto report = Train(dataset, config, params, epochs, seed);
      results.push_back({lr, a_minus, report.test_accuracy.back()});
    }
  }
  return results;
}

}  // namespace btbt
