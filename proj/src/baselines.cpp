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

#include "atof/baselines.hpp"

#include "atof/error.hpp"

namespace atofms {

SpectrumEstimate average_scans(std::span<const ScanRealization> scans) {
  require(!scans.empty(), ErrorKind::invalid_argument, "average_scans: no scans");
  const std::size_t n = scans.front().size();
  SpectrumEstimate out;
  out.method = "average";
  out.x.assign(n, 0.0);
  for (const auto& s : scans) {
    require(s.size() == n, ErrorKind::dimension, "average_scans: scans differ in length");
    for (std::size_t i = 0; i < n; ++i) out.x[i] += s[i];
  }
  const double inv = 1.0 / static_cast<double>(scans.size());
  for (double& v : out.x) v *= inv;
  return out;
}

SpectrumEstimate naive_atof(const EventList& ev, const FiringSchedule& sched) {
  require(ev.total_samples == sched.trace_length(), ErrorKind::dimension,
          "naive_atof: event list does not match the schedule");
  const auto tau = sched.firing_times();
  const std::size_t n = sched.scan_length();
  SpectrumEstimate out;
  out.method = "naive";
  out.schedule_hash = hash_schedule(sched);
  out.x.assign(n, 0.0);
  for (const auto& e : ev.events) {
    const auto intervals = sched.event_neighbors(e.t_start, e.t_end);
    const double share = 1.0 / static_cast<double>(intervals.size());
    for (const auto& iv : intervals) {
      const std::size_t offset = tau[iv.scan];
      for (std::size_t d = 0; d < e.samples.size(); ++d) {
        const std::size_t t = e.t_start + d;
        if (t < offset || t - offset >= n) continue;
        out.x[t - offset] += share * e.samples[d];
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(sched.scans());
  for (double& v : out.x) v *= inv;
  return out;
}

SpectrumEstimate naive_atof_samples(std::span<const double> y, const FiringSchedule& sched) {
  require(y.size() == sched.trace_length(), ErrorKind::dimension,
          "naive_atof_samples: trace does not match the schedule");
  SpectrumEstimate out;
  out.method = "naive-samples";
  out.schedule_hash = hash_schedule(sched);
  out.x.assign(sched.scan_length(), 0.0);
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (y[t] == 0.0) continue;
    const auto nb = sched.sample_neighbors(t);
    const double share = y[t] / static_cast<double>(nb.size());
    for (std::size_t i : nb) out.x[i] += share;
  }
  const double inv = 1.0 / static_cast<double>(sched.scans());
  for (double& v : out.x) v *= inv;
  return out;
}

}  // namespace atofms
