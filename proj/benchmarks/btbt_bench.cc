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

#include <vector>

#include "benchmark/benchmark.h"
#include "btbt/encoding.h"
#include "btbt/learning.h"
#include "btbt/network.h"
#include "btbt/neuron.h"

namespace btbt {
namespace {

void BM_LifStep(benchmark::State& state) {
  const NeuronParams params;
  NeuronState s = NeuronState::AtRest(params);
  for (auto _ : state) {
    s = LifStep(s, params, 1e-9, 1e-6).state;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_LifStep);

void BM_SimulateSingleNeuron(benchmark::State& state) {
  const NeuronParams params;
  const double duration = 0.001 * static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SimulateSingleNeuron(params, 1e-9, duration, params.tau_m() / 1000));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}
BENCHMARK(BM_SimulateSingleNeuron)->Arg(10)->Arg(100);

void BM_RunNetwork(benchmark::State& state) {
  NetworkConfig config;
  config.input_mode = state.range(0) ? InputMode::kClosedForm : InputMode::kOde;
  const SynapseMatrix weights(16, 3, 0.0, 1.0, 5e-8, 0.05);
  std::vector<double> currents(16);
  for (std::size_t i = 0; i < currents.size(); ++i) {
    currents[i] = 1e-10 * static_cast<double>(i % 8);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunNetwork(currents, weights, config));
  }
}
BENCHMARK(BM_RunNetwork)->Arg(0)->Arg(1);

void BM_IrisEpoch(benchmark::State& state) {
  const auto iris = LoadIris(BTBT_DATA_DIR "/iris.csv");
  for (auto _ : state) {
    benchmark::DoNotOptimize(Train(iris, TrainingConfig{}, StdpParams{}, 1, 1));
  }
}
BENCHMARK(BM_IrisEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace btbt

BENCHMARK_MAIN();
