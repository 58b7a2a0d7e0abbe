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

#ifndef BTBT_ENCODING_H_
#define BTBT_ENCODING_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace btbt {

inline constexpr std::size_t kFeatureCount = 4;
inline constexpr std::size_t kFieldsPerFeature = 4;
inline constexpr std::size_t kEncodedWidth = kFeatureCount * kFieldsPerFeature;
inline constexpr std::size_t kIrisClasses = 3;

inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "sepal_length", "sepal_width", "petal_length", "petal_width"};

struct IrisSample {
  // Centimeters, in kFeatureNames order.
  std::array<double, kFeatureCount> features{};
  std::size_t label = 0;
};

// Gaussian receptive fields, kFieldsPerFeature per feature, over min/max
// normalized features.
struct PopulationCoder {
  std::array<double, kFeatureCount> feature_min{};
  std::array<double, kFeatureCount> feature_max{};
  std::array<double, kFieldsPerFeature> centers{0.125, 0.375, 0.625, 0.875};
  double sigma = 0.125;
  double i_max_a = 1e-9;

  void Validate() const;
};

struct CoderShape {
  double sigma = 0.125;
  double i_max_a = 1e-9;
};

// Captures per-feature ranges. Throws InvalidArgument for fewer than two
// samples or a constant feature (the message names it).
PopulationCoder FitCoder(std::span<const IrisSample> training,
                         const CoderShape& shape = {});

// kEncodedWidth currents, feature-major. Features outside the fitted range
// are clamped.
std::vector<double> Encode(const IrisSample& sample,
                           const PopulationCoder& coder);

// CSV rows `sepal_length,sepal_width,petal_length,petal_width,class`, header
// optional. Class names may carry an `Iris-` prefix.
std::vector<IrisSample> ParseIris(std::istream& in,
                                  const std::string& source_name);
// As ParseIris, plus the 150 sample / 50 per class contract.
std::vector<IrisSample> LoadIris(const std::filesystem::path& path);

// Two classes separated on sepal_length alone; the other features are
// uniform noise over a shared range. `per_class` samples each.
std::vector<IrisSample> MakeSeparableToySet(std::size_t per_class,
                                            std::uint64_t seed);

}  // namespace btbt

#endif  // BTBT_ENCODING_H_
