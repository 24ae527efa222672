// Copyright 2026 The atof Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "atof/model.hpp"
#include "atof/schedule.hpp"

namespace atofms {

struct DetectionParams {
  double h0 = 1.0;         ///< support threshold
  double hw = 5.0;         ///< width-test threshold
  std::size_t d_min = 2;   ///< minimum run length at hw, in samples

  void validate() const;
  friend bool operator==(const DetectionParams&, const DetectionParams&) = default;
};

struct Event {
  std::size_t t_start = 0;
  std::size_t t_end = 0;  ///< inclusive
  double z = 0.0;         ///< sum of samples
  std::vector<double> samples;

  std::size_t width() const { return t_end - t_start + 1; }
  friend bool operator==(const Event&, const Event&) = default;
};

/// Sorted, disjoint events. Every sample not covered by an event is a
/// zero-weight observation.
struct EventList {
  std::vector<Event> events;
  std::size_t total_samples = 0;

  /// Number of zero-weight samples, T minus the samples covered by events.
  std::size_t zero_support_size() const;
  friend bool operator==(const EventList&, const EventList&) = default;
};

/// Runs with y >= hw of at least d_min samples mark pulses; each pulse's support
/// extends outward while y >= h0, and supports that overlap or touch merge.
EventList detect_events(std::span<const double> y, const DetectionParams& params);

/// Every positive sample becomes its own one-sample event.
EventList single_sample_events(std::span<const double> y);

/// Copy of y with every sample outside an event set to zero.
std::vector<double> zero_outside_events(std::span<const double> y, const EventList& ev);

/// Joins events with the schedule to produce the per-event neighborhoods.
LikelihoodContext events_to_context(const EventList& ev, const FiringSchedule& sched);

/// JSON lines, one {"t0", "t1", "z", "samples"} object per event.
void write_events_jsonl(std::ostream& os, const EventList& ev);
EventList read_events_jsonl(std::istream& is, std::size_t total_samples);

}  // namespace atofms
