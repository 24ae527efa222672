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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace atofms {

// All sample and bin indices are 0-based. Bin i of scan l lands on trace
// sample tau[l] + i.

/// Inclusive range of spectrum bins.
struct BinInterval {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t width() const { return hi - lo + 1; }
  friend bool operator==(const BinInterval&, const BinInterval&) = default;
};

/// Bins an event maps to if it was produced by scan `scan`.
struct ScanInterval {
  std::size_t scan = 0;
  BinInterval bins;

  friend bool operator==(const ScanInterval&, const ScanInterval&) = default;
};

/// Sorted bin indices.
using NeighborSet = std::vector<std::size_t>;

class FiringSchedule {
 public:
  FiringSchedule() = default;

  /// Throws Error(invalid_argument) unless tau[0] == 0 and tau is strictly
  /// increasing, and scan_length >= 1.
  FiringSchedule(std::size_t scan_length, std::vector<std::size_t> tau);

  std::size_t scan_length() const { return n_; }
  std::size_t scans() const { return tau_.size(); }
  std::size_t trace_length() const { return tau_.empty() ? 0 : tau_.back() + n_; }
  std::span<const std::size_t> firing_times() const { return tau_; }

  /// Neighbors of sample t (bins i with A[t, i] = 1), by binary search over
  /// the firing times.
  NeighborSet sample_neighbors(std::size_t t) const;

  /// Per contributing scan (ascending, so earliest firing first), the clipped
  /// bin interval that samples [t_start, t_end] map onto.
  std::vector<ScanInterval> event_neighbors(std::size_t t_start,
                                            std::size_t t_end) const;

  friend bool operator==(const FiringSchedule&, const FiringSchedule&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> tau_;
};

/// tau[0] = 0 and i.i.d. uniform integer gaps on [dtau_min, dtau_max].
/// A dtau_min of 0 is raised to 1 so no two scans fire on the same sample.
FiringSchedule generate_schedule(std::size_t n, std::size_t scans,
                                 std::size_t dtau_min, std::size_t dtau_max,
                                 std::uint64_t seed);

/// Gap bounds giving the requested acceleration factor n / E[dtau].
/// Factors <= 1 give the conventional fixed gap of n / factor samples.
struct GapBounds {
  std::size_t dtau_min;
  std::size_t dtau_max;
};
GapBounds gap_bounds_for_acceleration(std::size_t n, double acceleration);

/// Dense T x n 0/1 adjacency matrix. Only meant as a test oracle.
class DenseAdjacency {
 public:
  explicit DenseAdjacency(const FiringSchedule& sched);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool at(std::size_t t, std::size_t i) const { return data_[t * cols_ + i] != 0; }
  NeighborSet row(std::size_t t) const;

  static constexpr std::size_t kMaxEntries = 10'000'000;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Text format: header "n=<n> N=<N>", then one firing time per line.
void write_schedule(std::ostream& os, const FiringSchedule& sched);
FiringSchedule read_schedule(std::istream& is);

}  // namespace atofms
