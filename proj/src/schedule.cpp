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

#include "atof/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "atof/error.hpp"
#include "atof/rng.hpp"

namespace atofms {

FiringSchedule::FiringSchedule(std::size_t scan_length, std::vector<std::size_t> tau)
    : n_(scan_length), tau_(std::move(tau)) {
  require(n_ >= 1, ErrorKind::invalid_argument, "schedule: scan length must be >= 1");
  require(!tau_.empty(), ErrorKind::invalid_argument, "schedule: need at least one scan");
  require(tau_.front() == 0, ErrorKind::invalid_argument,
          "schedule: first firing time must be 0");
  for (std::size_t l = 1; l < tau_.size(); ++l) {
    require(tau_[l] > tau_[l - 1], ErrorKind::invalid_argument,
            "schedule: firing times must be strictly increasing");
  }
}

NeighborSet FiringSchedule::sample_neighbors(std::size_t t) const {
  require(t < trace_length(), ErrorKind::invalid_argument,
          "sample_neighbors: sample index out of range");
  // Scans with tau in (t - n, t].
  const std::size_t first = t + 1 >= n_ ? t + 1 - n_ : 0;
  auto lo = std::lower_bound(tau_.begin(), tau_.end(), first);
  auto hi = std::upper_bound(lo, tau_.end(), t);
  NeighborSet out;
  out.reserve(static_cast<std::size_t>(hi - lo));
  // Later firings give smaller bins, so walk backwards to stay sorted.
  for (auto it = hi; it != lo;) {
    --it;
    out.push_back(t - *it);
  }
  return out;
}

std::vector<ScanInterval> FiringSchedule::event_neighbors(std::size_t t_start,
                                                          std::size_t t_end) const {
  require(t_start <= t_end && t_end < trace_length(), ErrorKind::invalid_argument,
          "event_neighbors: invalid sample interval");
  const std::size_t first = t_start + 1 >= n_ ? t_start + 1 - n_ : 0;
  auto lo = std::lower_bound(tau_.begin(), tau_.end(), first);
  auto hi = std::upper_bound(lo, tau_.end(), t_end);
  std::vector<ScanInterval> out;
  out.reserve(static_cast<std::size_t>(hi - lo));
  for (auto it = lo; it != hi; ++it) {
    const std::size_t tau = *it;
    const std::size_t bin_lo = t_start > tau ? t_start - tau : 0;
    const std::size_t bin_hi = std::min(t_end - tau, n_ - 1);
    out.push_back({static_cast<std::size_t>(it - tau_.begin()), {bin_lo, bin_hi}});
  }
  return out;
}

FiringSchedule generate_schedule(std::size_t n, std::size_t scans, std::size_t dtau_min,
                                 std::size_t dtau_max, std::uint64_t seed) {
  require(scans >= 1, ErrorKind::invalid_argument, "generate_schedule: N must be >= 1");
  require(n >= 1, ErrorKind::invalid_argument, "generate_schedule: n must be >= 1");
  dtau_min = std::max<std::size_t>(dtau_min, 1);
  require(dtau_min <= dtau_max, ErrorKind::invalid_argument,
          "generate_schedule: need 1 <= dtau_min <= dtau_max");
  auto rng = make_stream(seed, Stream::schedule);
  std::uniform_int_distribution<std::size_t> gap(dtau_min, dtau_max);
  std::vector<std::size_t> tau(scans, 0);
  for (std::size_t l = 1; l < scans; ++l) tau[l] = tau[l - 1] + gap(rng);
  return FiringSchedule(n, std::move(tau));
}

GapBounds gap_bounds_for_acceleration(std::size_t n, double acceleration) {
  require(std::isfinite(acceleration) && acceleration > 0.0, ErrorKind::invalid_argument,
          "acceleration factor must be positive");
  const double mean = static_cast<double>(n) / acceleration;
  if (acceleration <= 1.0) {
    const auto gap = static_cast<std::size_t>(std::llround(mean));
    return {gap, gap};
  }
  const auto hi = static_cast<std::size_t>(std::llround(2.0 * mean)) - 1;
  require(hi >= 1, ErrorKind::invalid_argument, "acceleration factor too large for n");
  return {1, hi};
}

DenseAdjacency::DenseAdjacency(const FiringSchedule& sched)
    : rows_(sched.trace_length()), cols_(sched.scan_length()) {
  require(rows_ * cols_ <= kMaxEntries, ErrorKind::invalid_argument,
          "dense_adjacency: T*n exceeds the size guard");
  data_.assign(rows_ * cols_, 0);
  for (std::size_t tau : sched.firing_times()) {
    for (std::size_t i = 0; i < cols_; ++i) data_[(tau + i) * cols_ + i] = 1;
  }
}

NeighborSet DenseAdjacency::row(std::size_t t) const {
  NeighborSet out;
  for (std::size_t i = 0; i < cols_; ++i)
    if (at(t, i)) out.push_back(i);
  return out;
}

void write_schedule(std::ostream& os, const FiringSchedule& sched) {
  os << "n=" << sched.scan_length() << " N=" << sched.scans() << '\n';
  for (std::size_t tau : sched.firing_times()) os << tau << '\n';
}

FiringSchedule read_schedule(std::istream& is) {
  std::string header;
  require(static_cast<bool>(std::getline(is, header)), ErrorKind::data,
          "schedule file: missing header");
  std::size_t n = 0;
  std::size_t scans = 0;
  {
    std::istringstream hs(header);
    std::string a, b;
    hs >> a >> b;
    require(a.rfind("n=", 0) == 0 && b.rfind("N=", 0) == 0, ErrorKind::data,
            "schedule file: header must read 'n=<n> N=<N>'");
    try {
      n = std::stoull(a.substr(2));
      scans = std::stoull(b.substr(2));
    } catch (const std::exception&) {
      fail(ErrorKind::data, "schedule file: malformed header '" + header + "'");
    }
  }
  std::vector<std::size_t> tau;
  tau.reserve(scans);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    try {
      tau.push_back(std::stoull(line));
    } catch (const std::exception&) {
      fail(ErrorKind::data, "schedule file: bad firing time '" + line + "'");
    }
  }
  require(tau.size() == scans, ErrorKind::data,
          "schedule file: header says N=" + std::to_string(scans) + " but found " +
              std::to_string(tau.size()) + " firing times");
  return FiringSchedule(n, std::move(tau));
}

}  // namespace atofms
