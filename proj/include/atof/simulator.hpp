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

#include "atof/model.hpp"
#include "atof/schedule.hpp"

namespace atofms {

struct Peak {
  std::size_t center = 0;  ///< bin
  double rate = 0.0;       ///< expected ions per scan
  double sigma = 1.0;      ///< arrival spread in bins

  friend bool operator==(const Peak&, const Peak&) = default;
};

/// Synthetic ground truth: a sparse peak list on n bins.
struct GroundTruthSpec {
  std::size_t n = 0;
  double w0 = 1e-4;
  double pulse_sigma = 2.0;  ///< detector pulse width in samples
  std::vector<Peak> peaks;

  void validate() const;
  friend bool operator==(const GroundTruthSpec&, const GroundTruthSpec&) = default;
};

/// Unit-area discrete Gaussian truncated at ceil(4 sigma).
struct Kernel {
  std::vector<double> weights;
  std::ptrdiff_t half_width = 0;
};
Kernel gaussian_kernel(double sigma);

/// Peaks drawn with log-uniform rates on [rate_min, rate_max] and uniform
/// centers at least `margin` bins from either end.
struct PeakListOptions {
  std::size_t count = 150;
  double rate_min = 3e-3;
  double rate_max = 0.3;
  double sigma = 1.0;
  std::size_t margin = 50;
  friend bool operator==(const PeakListOptions&, const PeakListOptions&) = default;
};
GroundTruthSpec random_ground_truth(std::size_t n, double w0, double pulse_sigma,
                                    const PeakListOptions& opts, std::uint64_t seed);

/// w[i] = sum over peaks of rate * kernel(i - center). Kernel mass falling
/// outside [0, n) is dropped.
RateVector rate_vector_of(const GroundTruthSpec& gt);

/// Detector response shape shared by every impact.
struct ScanShape {
  double pulse_sigma = 2.0;  ///< samples
  double jitter_sd = 0.5;    ///< arrival jitter in samples, rounded to integers
  double noise_sd = 0.0;     ///< optional white noise; result is clipped at 0
  friend bool operator==(const ScanShape&, const ScanShape&) = default;
};

using ScanRealization = std::vector<double>;

/// One scan: per bin K ~ Poisson(w[i] + w0) impacts, each of Exp(mu) weight
/// spread over the pulse kernel around i plus rounded Gaussian jitter.
/// Deterministic in (seed, scan_index).
ScanRealization draw_scan(std::span<const double> w, const ModelParams& params,
                          const ScanShape& shape, std::uint64_t seed,
                          std::uint64_t scan_index = 0);

/// Detector record of overlapping scans.
struct Trace {
  std::size_t n = 0;      ///< scan length
  std::size_t scans = 0;  ///< N
  std::vector<double> y;  ///< T samples

  std::size_t length() const { return y.size(); }
};

/// y[t] = sum_l x_l[t - tau_l].
Trace assemble_trace(std::span<const ScanRealization> scans, const FiringSchedule& sched);

struct AcquisitionStats {
  std::size_t acquisition_time = 0;  ///< T in samples
  double acceleration_factor = 1.0;  ///< n / mean gap
};
AcquisitionStats acquisition_stats(const FiringSchedule& sched);

/// Probability mass of round(N(0, sd)) on integer offsets.
Kernel jitter_pmf(double sd);

/// Noiseless per-scan expected detector output mu * (w + w0) convolved with
/// the jitter and pulse kernels.
std::vector<double> expected_spectrum(const GroundTruthSpec& gt, const ModelParams& params,
                                      const ScanShape& shape);

/// Key-value text format; peaks as "peak = <center> <rate> <sigma>".
void write_ground_truth(std::ostream& os, const GroundTruthSpec& gt);
GroundTruthSpec read_ground_truth(std::istream& is);

}  // namespace atofms
