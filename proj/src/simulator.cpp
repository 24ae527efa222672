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

#include "atof/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "atof/error.hpp"
#include "atof/rng.hpp"

namespace atofms {

void GroundTruthSpec::validate() const {
  require(n >= 1, ErrorKind::invalid_argument, "ground truth: n must be >= 1");
  require(std::isfinite(w0) && w0 > 0.0, ErrorKind::invalid_argument,
          "ground truth: w0 must be positive");
  require(std::isfinite(pulse_sigma) && pulse_sigma > 0.0, ErrorKind::invalid_argument,
          "ground truth: pulse_sigma must be positive");
  for (const auto& p : peaks) {
    require(p.center < n, ErrorKind::invalid_argument, "ground truth: peak center out of range");
    require(std::isfinite(p.rate) && p.rate > 0.0, ErrorKind::invalid_argument,
            "ground truth: peak rate must be positive");
    require(std::isfinite(p.sigma) && p.sigma > 0.0, ErrorKind::invalid_argument,
            "ground truth: peak sigma must be positive");
  }
}

Kernel gaussian_kernel(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, ErrorKind::invalid_argument,
          "kernel: sigma must be positive");
  Kernel k;
  k.half_width = static_cast<std::ptrdiff_t>(std::ceil(4.0 * sigma));
  k.weights.resize(static_cast<std::size_t>(2 * k.half_width + 1));
  double total = 0.0;
  for (std::ptrdiff_t d = -k.half_width; d <= k.half_width; ++d) {
    const double x = static_cast<double>(d) / sigma;
    const double v = std::exp(-0.5 * x * x);
    k.weights[static_cast<std::size_t>(d + k.half_width)] = v;
    total += v;
  }
  for (double& v : k.weights) v /= total;
  return k;
}

Kernel jitter_pmf(double sd) {
  require(std::isfinite(sd) && sd >= 0.0, ErrorKind::invalid_argument,
          "jitter: sd must be non-negative");
  Kernel k;
  if (sd == 0.0) {
    k.weights = {1.0};
    return k;
  }
  k.half_width = static_cast<std::ptrdiff_t>(std::ceil(6.0 * sd)) + 1;
  const double scale = 1.0 / (sd * std::sqrt(2.0));
  for (std::ptrdiff_t d = -k.half_width; d <= k.half_width; ++d) {
    const double hi = 0.5 * std::erfc(-(static_cast<double>(d) + 0.5) * scale);
    const double lo = 0.5 * std::erfc(-(static_cast<double>(d) - 0.5) * scale);
    k.weights.push_back(hi - lo);
  }
  return k;
}

namespace {

void add_kernel(std::vector<double>& out, std::ptrdiff_t center, double mass,
                const Kernel& k) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  for (std::ptrdiff_t d = -k.half_width; d <= k.half_width; ++d) {
    const std::ptrdiff_t i = center + d;
    if (i < 0 || i >= n) continue;
    out[static_cast<std::size_t>(i)] += mass * k.weights[static_cast<std::size_t>(d + k.half_width)];
  }
}

std::vector<double> convolve(std::span<const double> x, const Kernel& k) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) add_kernel(out, static_cast<std::ptrdiff_t>(i), x[i], k);
  return out;
}

}  // namespace

GroundTruthSpec random_ground_truth(std::size_t n, double w0, double pulse_sigma,
                                    const PeakListOptions& opts, std::uint64_t seed) {
  require(n > 2 * opts.margin, ErrorKind::invalid_argument,
          "random_ground_truth: n too small for the margin");
  require(opts.rate_min > 0.0 && opts.rate_min <= opts.rate_max,
          ErrorKind::invalid_argument, "random_ground_truth: invalid rate range");
  GroundTruthSpec gt;
  gt.n = n;
  gt.w0 = w0;
  gt.pulse_sigma = pulse_sigma;
  auto rng = make_stream(seed, Stream::peaks);
  std::uniform_int_distribution<std::size_t> center(opts.margin, n - 1 - opts.margin);
  std::uniform_real_distribution<double> log_rate(std::log(opts.rate_min),
                                                  std::log(opts.rate_max));
  for (std::size_t p = 0; p < opts.count; ++p) {
    const std::size_t c = center(rng);
    gt.peaks.push_back({c, std::exp(log_rate(rng)), opts.sigma});
  }
  std::sort(gt.peaks.begin(), gt.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.center < b.center; });
  gt.validate();
  return gt;
}

RateVector rate_vector_of(const GroundTruthSpec& gt) {
  gt.validate();
  RateVector w(gt.n, 0.0);
  for (const auto& p : gt.peaks)
    add_kernel(w, static_cast<std::ptrdiff_t>(p.center), p.rate, gaussian_kernel(p.sigma));
  return w;
}

ScanRealization draw_scan(std::span<const double> w, const ModelParams& params,
                          const ScanShape& shape, std::uint64_t seed,
                          std::uint64_t scan_index) {
  params.validate();
  const std::size_t n = w.size();
  ScanRealization x(n, 0.0);
  if (n == 0) return x;
  auto rng = make_stream(seed, Stream::scans, scan_index);
  const Kernel pulse = gaussian_kernel(shape.pulse_sigma);
  std::exponential_distribution<double> weight(1.0 / params.mu);
  std::normal_distribution<double> jitter(0.0, shape.jitter_sd > 0.0 ? shape.jitter_sd : 1.0);

  auto impact = [&](std::size_t bin) {
    auto pos = static_cast<std::ptrdiff_t>(bin);
    if (shape.jitter_sd > 0.0) pos += static_cast<std::ptrdiff_t>(std::lround(jitter(rng)));
    add_kernel(x, pos, weight(rng), pulse);
  };

  // Poisson(w[i] + w0) per bin, drawn as the superposition of Poisson(w[i])
  // per signal bin and Poisson(n w0) noise impacts placed uniformly.
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] <= 0.0) continue;
    std::poisson_distribution<int> count(w[i]);
    for (int k = count(rng); k > 0; --k) impact(i);
  }
  std::poisson_distribution<long> noise_count(params.w0 * static_cast<double>(n));
  std::uniform_int_distribution<std::size_t> anywhere(0, n - 1);
  for (long k = noise_count(rng); k > 0; --k) impact(anywhere(rng));

  if (shape.noise_sd > 0.0) {
    auto noise_rng = make_stream(seed, Stream::noise, scan_index);
    std::normal_distribution<double> white(0.0, shape.noise_sd);
    for (double& v : x) v = std::max(0.0, v + white(noise_rng));
  }
  return x;
}

Trace assemble_trace(std::span<const ScanRealization> scans, const FiringSchedule& sched) {
  require(scans.size() == sched.scans(), ErrorKind::dimension,
          "assemble_trace: expected " + std::to_string(sched.scans()) + " scans, got " +
              std::to_string(scans.size()));
  Trace trace;
  trace.n = sched.scan_length();
  trace.scans = sched.scans();
  trace.y.assign(sched.trace_length(), 0.0);
  const auto tau = sched.firing_times();
  for (std::size_t l = 0; l < scans.size(); ++l) {
    require(scans[l].size() == trace.n, ErrorKind::dimension,
            "assemble_trace: scan length does not match the schedule");
    for (std::size_t i = 0; i < trace.n; ++i) trace.y[tau[l] + i] += scans[l][i];
  }
  return trace;
}

AcquisitionStats acquisition_stats(const FiringSchedule& sched) {
  AcquisitionStats stats;
  stats.acquisition_time = sched.trace_length();
  if (sched.scans() < 2) return stats;
  const auto tau = sched.firing_times();
  const double mean_gap =
      static_cast<double>(tau.back()) / static_cast<double>(sched.scans() - 1);
  stats.acceleration_factor = static_cast<double>(sched.scan_length()) / mean_gap;
  return stats;
}

std::vector<double> expected_spectrum(const GroundTruthSpec& gt, const ModelParams& params,
                                      const ScanShape& shape) {
  const RateVector w = rate_vector_of(gt);
  std::vector<double> base(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) base[i] = params.mu * (w[i] + params.w0);
  return convolve(convolve(base, jitter_pmf(shape.jitter_sd)),
                  gaussian_kernel(shape.pulse_sigma));
}

void write_ground_truth(std::ostream& os, const GroundTruthSpec& gt) {
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  os << "# ground truth peak list\n";
  os << "n = " << gt.n << '\n';
  os << "w0 = " << gt.w0 << '\n';
  os << "pulse_sigma = " << gt.pulse_sigma << '\n';
  for (const auto& p : gt.peaks)
    os << "peak = " << p.center << ' ' << p.rate << ' ' << p.sigma << '\n';
  os.precision(old);
}

GroundTruthSpec read_ground_truth(std::istream& is) {
  GroundTruthSpec gt;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      require(line.find_first_not_of(" \t\r") == std::string::npos, ErrorKind::data,
              "ground truth line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::istringstream key_stream(line.substr(0, eq));
    std::string key;
    key_stream >> key;
    std::istringstream value(line.substr(eq + 1));
    bool ok = true;
    if (key == "n") {
      ok = static_cast<bool>(value >> gt.n);
    } else if (key == "w0") {
      ok = static_cast<bool>(value >> gt.w0);
    } else if (key == "pulse_sigma") {
      ok = static_cast<bool>(value >> gt.pulse_sigma);
    } else if (key == "peak") {
      Peak p;
      ok = static_cast<bool>(value >> p.center >> p.rate >> p.sigma);
      gt.peaks.push_back(p);
    } else {
      fail(ErrorKind::data, "ground truth line " + std::to_string(lineno) +
                                ": unknown key '" + key + "'");
    }
    require(ok, ErrorKind::data,
            "ground truth line " + std::to_string(lineno) + ": malformed value");
  }
  try {
    gt.validate();
  } catch (const Error& e) {
    fail(ErrorKind::data, e.what());
  }
  return gt;
}

}  // namespace atofms
