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

#ifndef BTBT_CONFIG_H_
#define BTBT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "btbt/learning.h"
#include "btbt/neuron.h"

namespace btbt {

// Everything a CLI run needs. Neuron parameters live in
// training.network.neuron_params and are shared by the single-neuron and
// device commands.
struct RunConfig {
  TrainingConfig training;
  StdpParams stdp;
  std::optional<std::filesystem::path> iv_table;
  std::uint64_t seed = 1;
  std::size_t epochs = 50;
  std::filesystem::path output_dir = ".";

  const NeuronParams& neuron() const { return training.network.neuron_params; }
};

// Flat `key = value` text, `#` starts a comment. Unknown keys, duplicate
// keys and unparsable values are ConfigErrors carrying the line number and
// key. Relative paths resolve against `base_dir`. The parsed result is
// validated before returning, and a referenced IV table must exist.
RunConfig ParseConfig(std::istream& in, const std::string& source_name,
                      const std::filesystem::path& base_dir);
RunConfig LoadConfig(const std::filesystem::path& path);

// Checks every module invariant; throws ConfigError with the field path.
void ValidateConfig(const RunConfig& config);

}  // namespace btbt

#endif  // BTBT_CONFIG_H_
