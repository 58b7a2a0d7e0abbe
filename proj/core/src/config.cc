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

#include "btbt/config.h"

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "btbt/error.h"
#include "text_util.h"

namespace btbt {

namespace {

using Setter = std::function<bool(RunConfig&, std::string_view)>;

Setter Real(double NeuronParams::*field) {
  return [field](RunConfig& c, std::string_view text) {
    const auto v = internal::ParseDouble(text);
    if (!v) return false;
    c.training.network.neuron_params.*field = *v;
    return true;
  };
}

template <typename Owner>
Setter RealIn(Owner& (*owner)(RunConfig&), double Owner::*field) {
  return [owner, field](RunConfig& c, std::string_view text) {
    const auto v = internal::ParseDouble(text);
    if (!v) return false;
    owner(c).*field = *v;
    return true;
  };
}

Setter Count(std::size_t NetworkConfig::*field) {
  return [field](RunConfig& c, std::string_view text) {
    const auto v = internal::ParseUnsigned(text);
    if (!v) return false;
    c.training.network.*field = static_cast<std::size_t>(*v);
    return true;
  };
}

NetworkConfig& Net(RunConfig& c) { return c.training.network; }
TrainingConfig& Training(RunConfig& c) { return c.training; }
CoderShape& Coder(RunConfig& c) { return c.training.coder; }
StdpParams& Stdp(RunConfig& c) { return c.stdp; }

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      {"neuron.leak_resistance", Real(&NeuronParams::leak_resistance_ohm)},
      {"neuron.membrane_capacitance",
       Real(&NeuronParams::membrane_capacitance_f)},
      {"neuron.resting_potential", Real(&NeuronParams::resting_potential_v)},
      {"neuron.firing_threshold", Real(&NeuronParams::firing_threshold_v)},
      {"neuron.refractory_time", Real(&NeuronParams::refractory_time_s)},
      {"network.input_count", Count(&NetworkConfig::input_count)},
      {"network.output_count", Count(&NetworkConfig::output_count)},
      {"network.inhibition",
       [](RunConfig& c, std::string_view text) {
         if (text == "hard-reset") {
           c.training.network.inhibition = InhibitionMode::kHardReset;
         } else if (text == "subtractive") {
           c.training.network.inhibition = InhibitionMode::kSubtractive;
         } else {
           return false;
         }
         return true;
       }},
      {"network.inhibition_strength",
       RealIn(&Net, &NetworkConfig::inhibition_strength_v)},
      {"network.input_mode",
       [](RunConfig& c, std::string_view text) {
         if (text == "ode") {
           c.training.network.input_mode = InputMode::kOde;
         } else if (text == "closed-form") {
           c.training.network.input_mode = InputMode::kClosedForm;
         } else {
           return false;
         }
         return true;
       }},
      {"network.dt", RealIn(&Net, &NetworkConfig::dt_s)},
      {"network.duration", RealIn(&Net, &NetworkConfig::duration_s)},
      {"synapse.w_min", RealIn(&Training, &TrainingConfig::w_min)},
      {"synapse.w_max", RealIn(&Training, &TrainingConfig::w_max)},
      {"synapse.w_init_min", RealIn(&Training, &TrainingConfig::w_init_min)},
      {"synapse.w_init_max", RealIn(&Training, &TrainingConfig::w_init_max)},
      {"synapse.current_scale",
       RealIn(&Training, &TrainingConfig::current_scale_a)},
      {"encoding.sigma", RealIn(&Coder, &CoderShape::sigma)},
      {"encoding.i_max", RealIn(&Coder, &CoderShape::i_max_a)},
      {"stdp.a_plus", RealIn(&Stdp, &StdpParams::a_plus)},
      {"stdp.a_minus", RealIn(&Stdp, &StdpParams::a_minus)},
      {"stdp.tau_plus", RealIn(&Stdp, &StdpParams::tau_plus_s)},
      {"stdp.learning_rate", RealIn(&Stdp, &StdpParams::learning_rate)},
      {"stdp.supervision",
       [](RunConfig& c, std::string_view text) {
         if (text == "target-only") {
           c.stdp.supervision = SupervisionMode::kTargetOnly;
         } else if (text == "target-and-rival") {
           c.stdp.supervision = SupervisionMode::kTargetAndRival;
         } else {
           return false;
         }
         return true;
       }},
      {"run.seed",
       [](RunConfig& c, std::string_view text) {
         const auto v = internal::ParseUnsigned(text);
         if (!v) return false;
         c.seed = *v;
         return true;
       }},
      {"run.epochs",
       [](RunConfig& c, std::string_view text) {
         const auto v = internal::ParseUnsigned(text);
         if (!v) return false;
         c.epochs = static_cast<std::size_t>(*v);
         return true;
       }},
  };
  return *setters;
}

template <typename Fn>
void Check(const char* section, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(section) + ": " + e.what());
  }
}

}  // namespace

RunConfig ParseConfig(std::istream& in, const std::string& source_name,
                      const std::filesystem::path& base_dir) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " +
                      what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = internal::Trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    const std::string key(internal::Trim(text.substr(0, eq)));
    const auto value = internal::Trim(text.substr(eq + 1));
    if (key.empty()) fail("missing key");
    if (value.empty()) fail("key '" + key + "' has no value");
    if (!seen.insert(key).second) fail("duplicate key '" + key + "'");

    if (key == "device.iv_table") {
      std::filesystem::path p{std::string(value)};
      config.iv_table = p.is_absolute() ? p : base_dir / p;
      continue;
    }
    if (key == "run.output_dir") {
      std::filesystem::path p{std::string(value)};
      config.output_dir = p.is_absolute() ? p : base_dir / p;
      continue;
    }
    const auto it = Setters().find(key);
    if (it == Setters().end()) fail("unknown key '" + key + "'");
    if (!it->second(config, value)) {
      fail("key '" + key + "': invalid value '" + std::string(value) + "'");
    }
  }
  ValidateConfig(config);
  return config;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config");
  return ParseConfig(in, path.string(), path.parent_path());
}

void ValidateConfig(const RunConfig& config) {
  const auto& net = config.training.network;
  Check("neuron", [&] { net.neuron_params.Validate(); });
  Check("network", [&] { net.Validate(); });
  Check("synapse/encoding", [&] { config.training.Validate(); });
  Check("stdp", [&] { config.stdp.Validate(); });
  if (config.training.coder.i_max_a <= net.neuron_params.critical_current()) {
    throw ConfigError(
        "encoding.i_max must exceed the neuron critical current " +
        std::to_string(net.neuron_params.critical_current()) + " A");
  }
  if (config.iv_table && !std::filesystem::exists(*config.iv_table)) {
    throw ConfigError("device.iv_table: file not found: " +
                      config.iv_table->string());
  }
  if (config.epochs == 0) throw ConfigError("run.epochs must be >= 1");
}

}  // namespace btbt
