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

#include <sstream>
#include <string>

#include "btbt/error.h"
#include "gtest/gtest.h"

namespace btbt {
namespace {

RunConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseConfig(in, "t.cfg", BTBT_CONFIG_DIR);
}

// Asserts the parse fails and the message contains `needle`.
void ExpectConfigError(const std::string& text, const std::string& needle) {
  try {
    Parse(text);
    FAIL() << "accepted: " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
        << e.what();
  }
}

TEST(ConfigTest, ShippedConfigsLoad) {
  const auto iris = LoadConfig(BTBT_CONFIG_DIR "/iris.cfg");
  EXPECT_EQ(iris.training.network.output_count, 3u);
  EXPECT_EQ(iris.stdp.a_minus, 3.0);
  EXPECT_EQ(iris.epochs, 50u);
  ASSERT_TRUE(iris.iv_table.has_value());
  EXPECT_TRUE(std::filesystem::exists(*iris.iv_table));

  const auto device = LoadConfig(BTBT_CONFIG_DIR "/reference_device.cfg");
  EXPECT_EQ(device.neuron().membrane_capacitance_f, 8.96e-15);
}

TEST(ConfigTest, ParsesValuesAndEnums) {
  const auto c = Parse(
      "# comment\n"
      "neuron.refractory_time = 1e-4   # trailing\n"
      "network.inhibition = subtractive\n"
      "network.inhibition_strength = 0.05\n"
      "network.input_mode = closed-form\n"
      "stdp.supervision = target-only\n"
      "run.seed = 42\n");
  EXPECT_EQ(c.neuron().refractory_time_s, 1e-4);
  EXPECT_EQ(c.training.network.inhibition, InhibitionMode::kSubtractive);
  EXPECT_EQ(c.training.network.input_mode, InputMode::kClosedForm);
  EXPECT_EQ(c.stdp.supervision, SupervisionMode::kTargetOnly);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_FALSE(c.iv_table.has_value());
}

TEST(ConfigTest, EmptyConfigUsesValidDefaults) {
  EXPECT_NO_THROW(Parse(""));
}

TEST(ConfigTest, RejectsUnknownKey) {
  ExpectConfigError("run.seed = 1\nneuron.leak = 5\n", "t.cfg:2");
  ExpectConfigError("neuron.leak = 5\n", "neuron.leak");
}

TEST(ConfigTest, RejectsDuplicateKey) {
  ExpectConfigError("run.seed = 1\nrun.seed = 2\n", "duplicate key 'run.seed'");
}

TEST(ConfigTest, RejectsBadValueWithLine) {
  ExpectConfigError("\n\nneuron.leak_resistance = lots\n", "t.cfg:3");
  ExpectConfigError("network.inhibition = gentle\n", "network.inhibition");
  ExpectConfigError("run.epochs = -3\n", "run.epochs");
  ExpectConfigError("neuron.firing_threshold = nan\n", "firing_threshold");
  ExpectConfigError("just some words\n", "t.cfg:1");
}

TEST(ConfigTest, RejectsBrokenInvariants) {
  ExpectConfigError("neuron.membrane_capacitance = -1e-12\n", "neuron");
  ExpectConfigError("neuron.firing_threshold = -0.1\n", "neuron");
  ExpectConfigError("synapse.w_min = 2\n", "synapse");
  ExpectConfigError("network.dt = 0.1\n", "network");
  ExpectConfigError("encoding.i_max = 1e-10\n", "critical current");
  ExpectConfigError("stdp.tau_plus = 0\n", "stdp");
  ExpectConfigError("run.epochs = 0\n", "run.epochs");
}

TEST(ConfigTest, MissingIvTableIsReported) {
  ExpectConfigError("device.iv_table = nowhere/iv.txt\n", "nowhere");
  EXPECT_THROW(LoadConfig(BTBT_CONFIG_DIR "/missing.cfg"), ConfigError);
}

}  // namespace
}  // namespace btbt
