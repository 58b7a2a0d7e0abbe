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

#ifndef BTBT_SRC_RANDOM_UTIL_H_
#define BTBT_SRC_RANDOM_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace btbt::internal {

// The standard distributions are implementation-defined; these helpers only
// use raw mt19937_64 output so seeded runs agree across standard libraries.

inline double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * Uniform01(rng);
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t Below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

template <typename T>
void Shuffle(std::span<T> items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(Below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace btbt::internal

#endif  // BTBT_SRC_RANDOM_UTIL_H_
