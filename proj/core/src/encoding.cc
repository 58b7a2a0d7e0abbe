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

#include "btbt/encoding.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <string>
#include <string_view>

#include "btbt/error.h"
#include "random_util.h"
#include "text_util.h"

namespace btbt {

void PopulationCoder::Validate() const {
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (!(feature_max[f] > feature_min[f])) {
      throw InvalidArgument(std::string("coder range is degenerate for ") +
                            kFeatureNames[f]);
    }
  }
  for (std::size_t c = 1; c < centers.size(); ++c) {
    if (!(centers[c] > centers[c - 1])) {
      throw InvalidArgument("coder centers must strictly increase");
    }
  }
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw InvalidArgument("coder sigma must be > 0");
  }
  if (!std::isfinite(i_max_a) || i_max_a < 0.0) {
    throw InvalidArgument("coder i_max must be finite and >= 0");
  }
}

PopulationCoder FitCoder(std::span<const IrisSample> training,
                         const CoderShape& shape) {
  if (training.size() < 2) {
    throw InvalidArgument("FitCoder needs at least 2 samples");
  }
  PopulationCoder coder;
  coder.sigma = shape.sigma;
  coder.i_max_a = shape.i_max_a;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const auto [lo, hi] = std::minmax_element(
        training.begin(), training.end(),
        [f](const IrisSample& a, const IrisSample& b) {
          return a.features[f] < b.features[f];
        });
    coder.feature_min[f] = lo->features[f];
    coder.feature_max[f] = hi->features[f];
    if (!(coder.feature_max[f] > coder.feature_min[f])) {
      throw InvalidArgument(std::string("degenerate (constant) range for "
                                        "feature ") +
                            kFeatureNames[f]);
    }
  }
  coder.Validate();
  return coder;
}

std::vector<double> Encode(const IrisSample& sample,
                           const PopulationCoder& coder) {
  std::vector<double> currents;
  currents.reserve(kEncodedWidth);
  const double two_sigma_sq = 2.0 * coder.sigma * coder.sigma;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const double range = coder.feature_max[f] - coder.feature_min[f];
    const double x = std::clamp(
        (sample.features[f] - coder.feature_min[f]) / range, 0.0, 1.0);
    for (const double center : coder.centers) {
      const double d = x - center;
      currents.push_back(coder.i_max_a * std::exp(-d * d / two_sigma_sq));
    }
  }
  return currents;
}

namespace {

std::optional<std::size_t> ClassIndex(std::string_view name) {
  if (name.starts_with("Iris-")) name.remove_prefix(5);
  if (name == "setosa") return 0;
  if (name == "versicolor") return 1;
  if (name == "virginica") return 2;
  return std::nullopt;
}

}  // namespace

std::vector<IrisSample> ParseIris(std::istream& in,
                                  const std::string& source_name) {
  std::vector<IrisSample> samples;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = internal::Trim(line);
    if (trimmed.empty()) continue;
    const auto fields = internal::Split(trimmed, ',');
    if (!seen_content) {
      seen_content = true;
      if (!internal::ParseDouble(fields[0])) continue;  // header row
    }
    if (fields.size() != kFeatureCount + 1) {
      throw ParseError(source_name, line_no,
                       "expected 5 columns, found " +
                           std::to_string(fields.size()));
    }
    IrisSample sample;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const auto value = internal::ParseDouble(fields[f]);
      if (!value) {
        throw ParseError(source_name, line_no,
                         std::string("bad number in ") + kFeatureNames[f]);
      }
      if (*value <= 0.0) {
        throw ParseError(source_name, line_no,
                         std::string(kFeatureNames[f]) + " must be > 0");
      }
      sample.features[f] = *value;
    }
    const auto class_name = internal::Trim(fields[kFeatureCount]);
    const auto label = ClassIndex(class_name);
    if (!label) {
      throw ParseError(source_name, line_no,
                       "unknown class '" + std::string(class_name) + "'");
    }
    sample.label = *label;
    samples.push_back(sample);
  }
  return samples;
}

std::vector<IrisSample> LoadIris(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open iris csv");
  auto samples = ParseIris(in, path.string());
  if (samples.size() != 150) {
    throw ParseError(path.string(), 0,
                     "expected 150 samples, found " +
                         std::to_string(samples.size()));
  }
  std::array<std::size_t, kIrisClasses> counts{};
  for (const auto& s : samples) ++counts[s.label];
  for (std::size_t c = 0; c < kIrisClasses; ++c) {
    if (counts[c] != 50) {
      throw ParseError(path.string(), 0,
                       "expected 50 samples of class " + std::to_string(c) +
                           ", found " + std::to_string(counts[c]));
    }
  }
  return samples;
}

std::vector<IrisSample> MakeSeparableToySet(std::size_t per_class,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<IrisSample> samples;
  samples.reserve(2 * per_class);
  for (std::size_t label = 0; label < 2; ++label) {
    const double lo = label == 0 ? 4.0 : 7.0;
    for (std::size_t n = 0; n < per_class; ++n) {
      IrisSample s;
      s.label = label;
      s.features[0] = internal::Uniform(rng, lo, lo + 1.0);
      for (std::size_t f = 1; f < kFeatureCount; ++f) {
        s.features[f] = internal::Uniform(rng, 1.0, 5.0);
      }
      samples.push_back(s);
    }
  }
  return samples;
}

}  // namespace btbt
