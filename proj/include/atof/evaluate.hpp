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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "atof/preprocess.hpp"

namespace atofms {

/// TP/FP/FN counts and the derived rates. True negatives are not defined for
/// this problem and are never computed.
struct MatchReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double tpr = 0.0;
  double fdr = 0.0;
  double fnr = 0.0;
  /// For each estimate, the truth item that validated it (first match).
  std::vector<std::optional<std::size_t>> estimate_match;
  /// For each truth item, whether any estimate matched it.
  std::vector<bool> truth_matched;
};

/// Fills tpr/fdr/fnr from the counts. With no truth items TPR is 1 and FNR 0;
/// with no estimates FDR is 0.
void finalize_rates(MatchReport& report);

/// An estimate is a true positive when some truth event covers at least half
/// of the estimate's width. One truth event may validate several estimates.
MatchReport match_events(const EventList& truth, const EventList& est);

/// Maps bin positions to the sqrt(m/z) scale: mcr = t * sample_period / c.
struct Calibration {
  double c = 5e-9;               ///< flight constant, seconds per sqrt(m/z) unit
  double sample_period = 2.5e-11;

  double mcr(double t) const { return t * sample_period / c; }
  void validate() const;
  friend bool operator==(const Calibration&, const Calibration&) = default;
};

struct PickedPeak {
  double mcr = 0.0;
  double intensity = 0.0;  ///< height of the local maximum
  double position = 0.0;   ///< centroid in bins
  double fwhm = 0.0;       ///< in bins, linear interpolation at half maximum
};

/// Sorted by intensity, largest first.
using PeakList = std::vector<PickedPeak>;

/// Centroid peak picker: every local maximum at or above min_height gives a
/// peak whose position is the intensity-weighted centroid of the contiguous
/// samples at or above half its height.
PeakList pick_peaks(std::span<const double> x, double min_height, const Calibration& cal);

/// Keeps the k most intense peaks of each list; an estimate matches when a
/// truth peak lies within delta_m on the MCR scale.
MatchReport match_peaks(const PeakList& truth, const PeakList& est, std::size_t k,
                        double delta_m);

/// Median-based estimate of the mean single-impact weight from rare ions:
/// bins holding an event in more than `lo` but less than `hi` of the
/// acquisitions. Under exponential impact weights the median of single
/// impacts is mu ln 2, so the median is divided by ln 2.
double estimate_single_ion_weight(std::span<const EventList> acquisitions, double lo = 0.001,
                                  double hi = 0.01);

/// Empirical CDF of FWHM / height over the picked pulses, as
/// (ratio, cumulative fraction) pairs in increasing ratio order.
std::vector<std::pair<double, double>> width_intensity_cdf(std::span<const double> x,
                                                           double min_height);

/// Largest vertical gap between two empirical CDFs.
double kolmogorov_distance(std::span<const std::pair<double, double>> a,
                           std::span<const std::pair<double, double>> b);

}  // namespace atofms
