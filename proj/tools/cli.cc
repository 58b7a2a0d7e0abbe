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

#include "cli.h"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "btbt/config.h"
#include "btbt/device.h"
#include "btbt/encoding.h"
#include "btbt/error.h"
#include "btbt/learning.h"
#include "btbt/network.h"

namespace btbt::cli {
namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

struct RangeOptions {
  double v_min = 0.8;
  double v_max = 1.5;
  std::size_t n = 15;
};

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

RunConfig LoadRunConfig(const CommonOptions& common) {
  RunConfig config = LoadConfig(common.config_path);
  if (common.seed) config.seed = *common.seed;
  if (!common.out_dir.empty()) config.output_dir = common.out_dir;
  return config;
}

DeviceIVTable LoadConfiguredTable(const RunConfig& config,
                                  const RangeOptions& range) {
  if (!config.iv_table) throw ConfigError("device.iv_table is required");
  DeviceIVTable table = [&] {
    try {
      return LoadIVTable(*config.iv_table);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("device.iv_table: ") + e.what());
    }
  }();
  if (range.v_min > range.v_max || range.n == 0 ||
      (range.n == 1 && range.v_min != range.v_max)) {
    throw ConfigError("need v_min <= v_max and n >= 2 (n = 1 only for a "
                      "single voltage)");
  }
  if (range.v_min < table.min_voltage() || range.v_max > table.max_voltage()) {
    throw ConfigError("voltage range [" + Fmt("%g", range.v_min) + ", " +
                      Fmt("%g", range.v_max) + "] V is outside the IV table [" +
                      Fmt("%g", table.min_voltage()) + ", " +
                      Fmt("%g", table.max_voltage()) + "] V");
  }
  return table;
}

fs::path OutputFile(const RunConfig& config, const char* name) {
  fs::create_directories(config.output_dir);
  return config.output_dir / name;
}

std::ofstream OpenOutput(const fs::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  return file;
}

int Sweep(const CommonOptions& common, const RangeOptions& range,
          bool simulate, std::ostream& out) {
  const RunConfig config = LoadRunConfig(common);
  const DeviceIVTable table = LoadConfiguredTable(config, range);
  const auto sweep = FrequencySweep(config.neuron(), table, range.v_min,
                                    range.v_max, range.n, simulate);
  const auto path = OutputFile(config, "frequency_sweep.csv");
  auto file = OpenOutput(path);
  WriteFrequencySweepCsv(file, sweep);
  out << "wrote " << path.string() << " (" << sweep.size() << " points)\n";
  return kOk;
}

int Energy(const CommonOptions& common, const RangeOptions& range,
           std::ostream& out) {
  const RunConfig config = LoadRunConfig(common);
  const DeviceIVTable table = LoadConfiguredTable(config, range);
  const auto sweep = EnergySweep(config.neuron(), table, range.v_min,
                                 range.v_max, range.n);
  const auto path = OutputFile(config, "energy_sweep.csv");
  auto file = OpenOutput(path);
  WriteEnergySweepCsv(file, sweep);
  out << "wrote " << path.string() << " (" << sweep.size() << " points)\n";

  const auto mean = MeanEnergy(sweep);
  if (!mean) {
    out << "no spiking region in [" << Fmt("%g", range.v_min) << ", "
        << Fmt("%g", range.v_max) << "] V\n";
    return kOk;
  }
  out << "average leaky-integration energy/spike: "
      << Fmt("%.4f", *mean * 1e15) << " fJ\n";
  out << "total energy/spike incl. " << Fmt("%.2f", kResetCircuitEnergyJ * 1e15)
      << " fJ reset circuit: "
      << Fmt("%.4f", (*mean + kResetCircuitEnergyJ) * 1e15)
      << " fJ (target 3.22 fJ)\n";
  return kOk;
}

struct DatasetOptions {
  std::string iris_path;
  bool toy = false;
};

std::vector<IrisSample> LoadDataset(const DatasetOptions& data,
                                    const RunConfig& config) {
  if (data.toy) return MakeSeparableToySet(kToySamplesPerClass, config.seed);
  if (data.iris_path.empty()) throw ConfigError("--iris is required");
  return LoadIris(data.iris_path);
}

int TrainCommand(const CommonOptions& common, const DatasetOptions& data,
                 std::optional<std::size_t> epochs, std::ostream& out) {
  RunConfig config = LoadRunConfig(common);
  if (epochs) {
    if (*epochs == 0) throw ConfigError("--epochs must be >= 1");
    config.epochs = *epochs;
  }
  if (data.toy) {
    config.training = ToyTrainingConfig(config.training);
    config.stdp.learning_rate = kToyLearningRate;
    if (!epochs) config.epochs = kToyEpochs;
  }
  const auto samples = LoadDataset(data, config);
  const auto report =
      Train(samples, config.training, config.stdp, config.epochs, config.seed);

  const auto curve_path = OutputFile(config, "learning_curve.csv");
  {
    auto file = OpenOutput(curve_path);
    WriteLearningCurveCsv(file, report.test_accuracy);
  }
  const auto weights_path = OutputFile(config, "weights.csv");
  {
    auto file = OpenOutput(weights_path);
    WriteWeightsCsv(file, report.weights);
  }
  out << "wrote " << curve_path.string() << "\n";
  out << "wrote " << weights_path.string() << "\n";
  out << "epoch 1 test accuracy: " << Fmt("%.4f", report.test_accuracy.front())
      << "\n";
  out << "final train accuracy: " << Fmt("%.4f", report.train_accuracy.back())
      << "\n";
  out << "final test accuracy: " << Fmt("%.4f", report.test_accuracy.back())
      << "\n";
  return kOk;
}

int EvalCommand(const CommonOptions& common, const DatasetOptions& data,
                const std::string& weights_path, std::ostream& out) {
  RunConfig config = LoadRunConfig(common);
  if (data.toy) config.training = ToyTrainingConfig(config.training);
  const auto samples = LoadDataset(data, config);
  const DataSplit split = StratifiedSplit(samples, config.seed);
  const PopulationCoder coder = FitCoder(split.train, config.training.coder);

  std::ifstream file(weights_path);
  if (!file) throw ParseError(weights_path, 0, "cannot open weights file");
  const SynapseMatrix like(config.training.network.input_count,
                           config.training.network.output_count,
                           config.training.w_min, config.training.w_max,
                           config.training.current_scale_a);
  const SynapseMatrix weights = ReadWeightsCsv(file, like);
  const double accuracy =
      Evaluate(split.test, coder, weights, config.training.network);
  out << "test accuracy: " << Fmt("%.4f", accuracy) << "\n";
  return kOk;
}

int TuneCommand(const CommonOptions& common, const DatasetOptions& data,
                std::optional<std::size_t> epochs,
                const std::vector<double>& rates,
                const std::vector<double>& a_minus, std::ostream& out) {
  RunConfig config = LoadRunConfig(common);
  if (epochs) {
    if (*epochs == 0) throw ConfigError("--epochs must be >= 1");
    config.epochs = *epochs;
  }
  if (data.toy) config.training = ToyTrainingConfig(config.training);
  const auto samples = LoadDataset(data, config);
  const auto grid = GridSearch(samples, config.training, config.stdp, rates,
                               a_minus, config.epochs, config.seed);
  const auto path = OutputFile(config, "grid_search.csv");
  auto file = OpenOutput(path);
  file << "learning_rate,a_minus,final_test_accuracy\n";
  const GridPoint* best = nullptr;
  for (const auto& p : grid) {
    file << Fmt("%.17g", p.learning_rate) << ',' << Fmt("%.17g", p.a_minus)
         << ',' << Fmt("%.17g", p.final_test_accuracy) << '\n';
    if (!best || p.final_test_accuracy > best->final_test_accuracy) best = &p;
  }
  out << "wrote " << path.string() << "\n";
  if (best) {
    out << "best: learning_rate=" << Fmt("%g", best->learning_rate)
        << " a_minus=" << Fmt("%g", best->a_minus)
        << " test accuracy=" << Fmt("%.4f", best->final_test_accuracy) << "\n";
  }
  return kOk;
}

void AddCommon(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--config", common.config_path, "Run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", common.seed, "Override run.seed");
  cmd->add_option("--out", common.out_dir, "Override run.output_dir");
}

void AddRange(CLI::App* cmd, RangeOptions& range) {
  cmd->add_option("--v-min", range.v_min, "Lowest drain voltage (V)")
      ->capture_default_str();
  cmd->add_option("--v-max", range.v_max, "Highest drain voltage (V)")
      ->capture_default_str();
  cmd->add_option("--n", range.n, "Grid points")->capture_default_str();
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Band-to-band tunneling LIF neuron toolkit", "btbt"};
  app.require_subcommand(1);

  CommonOptions common;
  RangeOptions range;
  DatasetOptions data;
  bool simulate = false;
  std::optional<std::size_t> epochs;
  std::string weights_path;
  std::vector<double> rates{2.5e-6, 5e-6, 1e-5};
  std::vector<double> a_minus{1.0, 2.0, 3.0, 4.0};

  auto* sweep = app.add_subcommand("sweep", "Spike frequency vs drain voltage");
  AddCommon(sweep, common);
  AddRange(sweep, range);
  sweep->add_flag("--simulate", simulate,
                  "Also integrate the ODE at every point (slow)");

  auto* energy = app.add_subcommand("energy", "Energy per spike vs drain voltage");
  AddCommon(energy, common);
  AddRange(energy, range);

  auto* train = app.add_subcommand("train", "Train the WTA network with STDP");
  AddCommon(train, common);
  train->add_option("--iris", data.iris_path, "Iris CSV");
  train->add_option("--epochs", epochs, "Override run.epochs");
  train->add_flag("--toy", data.toy, "Use the separable two-class toy set");

  auto* eval = app.add_subcommand("eval", "Evaluate saved weights on the test split");
  AddCommon(eval, common);
  eval->add_option("--weights", weights_path, "weights.csv from train")
      ->required();
  eval->add_option("--iris", data.iris_path, "Iris CSV");
  eval->add_flag("--toy", data.toy, "Use the separable two-class toy set");

  auto* tune = app.add_subcommand("tune", "Grid search over learning_rate x a_minus");
  AddCommon(tune, common);
  tune->add_option("--iris", data.iris_path, "Iris CSV");
  tune->add_option("--epochs", epochs, "Override run.epochs");
  tune->add_flag("--toy", data.toy, "Use the separable two-class toy set");
  tune->add_option("--learning-rates", rates, "Candidate learning rates")
      ->capture_default_str();
  tune->add_option("--a-minus", a_minus, "Candidate depression amplitudes")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (sweep->parsed()) return Sweep(common, range, simulate, out);
    if (energy->parsed()) return Energy(common, range, out);
    if (train->parsed()) return TrainCommand(common, data, epochs, out);
    if (eval->parsed()) return EvalCommand(common, data, weights_path, out);
    if (tune->parsed()) {
      return TuneCommand(common, data, epochs, rates, a_minus, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace btbt::cli
