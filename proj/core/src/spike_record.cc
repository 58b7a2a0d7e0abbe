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

#include "btbt/spike_record.h"

#include <istream>
#include <ostream>
#include <string>

#include "btbt/error.h"
#include "text_util.h"

namespace btbt {

void SpikeRecord::Add(double time_s, std::size_t neuron_id) {
  if (neuron_id >= neuron_count_) {
    throw InvalidArgument("spike neuron id " + std::to_string(neuron_id) +
                          " out of range");
  }
  if (!events_.empty() && time_s < events_.back().time_s) {
    throw InvalidArgument("spike times must be non-decreasing");
  }
  events_.push_back({time_s, neuron_id});
}

std::vector<std::size_t> SpikeRecord::CountsPerNeuron() const {
  std::vector<std::size_t> counts(neuron_count_, 0);
  for (const auto& e : events_) ++counts[e.neuron_id];
  return counts;
}

std::vector<double> SpikeRecord::TimesOf(std::size_t neuron_id) const {
  std::vector<double> times;
  for (const auto& e : events_) {
    if (e.neuron_id == neuron_id) times.push_back(e.time_s);
  }
  return times;
}

double EmpiricalFrequency(std::span<const double> spike_times) {
  if (spike_times.size() < 2) return 0.0;
  const double span_s = spike_times.back() - spike_times.front();
  if (span_s <= 0.0) return 0.0;
  return static_cast<double>(spike_times.size() - 1) / span_s;
}

void WriteSpikeCsv(std::ostream& out, const SpikeRecord& record) {
  out << "time_s,neuron_id\n";
  for (const auto& e : record.events()) {
    out << internal::FormatDouble(e.time_s) << ',' << e.neuron_id << '\n';
  }
}

SpikeRecord ReadSpikeCsv(std::istream& in, std::size_t neuron_count) {
  SpikeRecord record(neuron_count);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = internal::Trim(line);
    if (trimmed.empty()) continue;
    if (line_no == 1 && trimmed == "time_s,neuron_id") continue;
    const auto fields = internal::Split(trimmed, ',');
    if (fields.size() != 2) {
      throw ParseError("spike csv", line_no, "expected time_s,neuron_id");
    }
    const auto t = internal::ParseDouble(fields[0]);
    const auto id = internal::ParseUnsigned(fields[1]);
    if (!t || !id) throw ParseError("spike csv", line_no, "bad number");
    try {
      record.Add(*t, static_cast<std::size_t>(*id));
    } catch (const InvalidArgument& e) {
      throw ParseError("spike csv", line_no, e.what());
    }
  }
  return record;
}

}  // namespace btbt
