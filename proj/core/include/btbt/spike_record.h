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

#ifndef BTBT_SPIKE_RECORD_H_
#define BTBT_SPIKE_RECORD_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace btbt {

struct SpikeEvent {
  double time_s = 0.0;
  std::size_t neuron_id = 0;

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

// Time-sorted spike events for a population of `neuron_count` neurons.
class SpikeRecord {
 public:
  SpikeRecord() = default;
  explicit SpikeRecord(std::size_t neuron_count)
      : neuron_count_(neuron_count) {}

  // Appends an event. Throws InvalidArgument if the time goes backwards or
  // the id is out of range.
  void Add(double time_s, std::size_t neuron_id);

  std::size_t neuron_count() const { return neuron_count_; }
  std::span<const SpikeEvent> events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  std::vector<std::size_t> CountsPerNeuron() const;
  std::vector<double> TimesOf(std::size_t neuron_id) const;

  friend bool operator==(const SpikeRecord&, const SpikeRecord&) = default;

 private:
  std::size_t neuron_count_ = 0;
  std::vector<SpikeEvent> events_;
};

// (n - 1) / (t_last - t_first) over one neuron's train; 0 with < 2 spikes.
double EmpiricalFrequency(std::span<const double> spike_times);

// CSV with header `time_s,neuron_id`.
void WriteSpikeCsv(std::ostream& out, const SpikeRecord& record);
SpikeRecord ReadSpikeCsv(std::istream& in, std::size_t neuron_count);

}  // namespace btbt

#endif  // BTBT_SPIKE_RECORD_H_
