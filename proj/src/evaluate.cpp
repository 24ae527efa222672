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

#include "atof/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "atof/error.hpp"

namespace atofms {

void finalize_rates(MatchReport& r) {
  const auto truth = static_cast<double>(r.tp + r.fn);
  const auto found = static_cast<double>(r.tp + r.fp);
  r.tpr = truth > 0 ? static_cast<double>(r.tp) / truth : 1.0;
  r.fnr = truth > 0 ? static_cast<double>(r.fn) / truth : 0.0;
  r.fdr = found > 0 ? static_cast<double>(r.fp) / found : 0.0;
}

MatchReport match_events(const EventList& truth, const EventList& est) {
  require(truth.total_samples == est.total_samples, ErrorKind::dimension,
          "match_events: truth and estimate live on different axes");
  // Truth events sorted by start; they are disjoint, so ends are sorted too.
  std::vector<std::size_t> order(truth.events.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return truth.events[a].t_start < truth.events[b].t_start;
  });

  MatchReport r;
  r.truth_matched.assign(truth.events.size(), false);
  r.estimate_match.assign(est.events.size(), std::nullopt);
  for (std::size_t j = 0; j < est.events.size(); ++j) {
    const auto& e = est.events[j];
    auto it = std::lower_bound(order.begin(), order.end(), e.t_start,
                               [&](std::size_t idx, std::size_t t) {
                                 return truth.events[idx].t_end < t;
                               });
    for (; it != order.end() && truth.events[*it].t_start <= e.t_end; ++it) {
      const auto& g = truth.events[*it];
      const std::size_t overlap =
          std::min(g.t_end, e.t_end) - std::max(g.t_start, e.t_start) + 1;
      if (2 * overlap >= e.width()) {
        r.truth_matched[*it] = true;
        if (!r.estimate_match[j]) r.estimate_match[j] = *it;
      }
    }
    if (r.estimate_match[j]) {
      ++r.tp;
    } else {
      ++r.fp;
    }
  }
  r.fn = static_cast<std::size_t>(
      std::count(r.truth_matched.begin(), r.truth_matched.end(), false));
  finalize_rates(r);
  return r;
}

void Calibration::validate() const {
  require(std::isfinite(c) && c > 0.0 && std::isfinite(sample_period) && sample_period > 0.0,
          ErrorKind::invalid_argument, "calibration: c and sample_period must be positive");
}

namespace {

// Local maxima with the FWHM support and interpolated width of each.
struct Pulse {
  std::size_t peak;
  std::size_t lo, hi;  // samples >= half maximum
  double fwhm;
};

std::vector<Pulse> find_pulses(std::span<const double> x, double min_height) {
  require(min_height > 0.0, ErrorKind::invalid_argument, "min_height must be positive");
  std::vector<Pulse> out;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double h = x[i];
    if (h < min_height) continue;
    if (i > 0 && !(h > x[i - 1])) continue;
    if (i + 1 < n && !(h >= x[i + 1])) continue;
    const double half = 0.5 * h;
    std::size_t lo = i;
    while (lo > 0 && x[lo - 1] >= half) --lo;
    std::size_t hi = i;
    while (hi + 1 < n && x[hi + 1] >= half) ++hi;
    double left = static_cast<double>(lo);
    if (lo > 0) left -= (x[lo] - half) / (x[lo] - x[lo - 1]);
    double right = static_cast<double>(hi);
    if (hi + 1 < n) right += (x[hi] - half) / (x[hi] - x[hi + 1]);
    out.push_back({i, lo, hi, right - left});
  }
  return out;
}

}  // namespace

PeakList pick_peaks(std::span<const double> x, double min_height, const Calibration& cal) {
  cal.validate();
  PeakList peaks;
  for (const auto& p : find_pulses(x, min_height)) {
    double mass = 0.0;
    double moment = 0.0;
    for (std::size_t i = p.lo; i <= p.hi; ++i) {
      mass += x[i];
      moment += static_cast<double>(i) * x[i];
    }
    const double centroid = moment / mass;
    const double mcr = cal.mcr(centroid);
    if (!(mcr > 0.0)) continue;
    peaks.push_back({mcr, x[p.peak], centroid, p.fwhm});
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const PickedPeak& a, const PickedPeak& b) {
    return a.intensity > b.intensity;
  });
  return peaks;
}

MatchReport match_peaks(const PeakList& truth, const PeakList& est, std::size_t k,
                        double delta_m) {
  require(k >= 1, ErrorKind::invalid_argument, "match_peaks: k must be >= 1");
  require(delta_m > 0.0, ErrorKind::invalid_argument, "match_peaks: delta_m must be positive");
  const std::size_t nt = std::min(k, truth.size());
  const std::size_t ne = std::min(k, est.size());

  // Truth MCRs sorted for range queries.
  std::vector<std::pair<double, std::size_t>> sorted;
  for (std::size_t i = 0; i < nt; ++i) sorted.emplace_back(truth[i].mcr, i);
  std::sort(sorted.begin(), sorted.end());

  MatchReport r;
  r.truth_matched.assign(nt, false);
  r.estimate_match.assign(ne, std::nullopt);
  for (std::size_t j = 0; j < ne; ++j) {
    const double m = est[j].mcr;
    auto it = std::lower_bound(sorted.begin(), sorted.end(),
                               std::make_pair(m - delta_m, std::size_t{0}));
    for (; it != sorted.end() && it->first <= m + delta_m; ++it) {
      r.truth_matched[it->second] = true;
      if (!r.estimate_match[j]) r.estimate_match[j] = it->second;
    }
    if (r.estimate_match[j]) {
      ++r.tp;
    } else {
      ++r.fp;
    }
  }
  r.fn = static_cast<std::size_t>(
      std::count(r.truth_matched.begin(), r.truth_matched.end(), false));
  finalize_rates(r);
  return r;
}

double estimate_single_ion_weight(std::span<const EventList> acquisitions, double lo,
                                  double hi) {
  require(acquisitions.size() >= 100, ErrorKind::invalid_argument,
          "estimate_single_ion_weight: need at least 100 acquisitions");
  require(0.0 < lo && lo < hi && hi < 1.0, ErrorKind::invalid_argument,
          "estimate_single_ion_weight: need 0 < lo < hi < 1");

  auto peak_bin = [](const Event& e) {
    const auto it = std::max_element(e.samples.begin(), e.samples.end());
    return e.t_start + static_cast<std::size_t>(it - e.samples.begin());
  };

  // Acquisitions in which each bin holds at least one event.
  std::unordered_map<std::size_t, std::size_t> seen;
  for (const auto& acq : acquisitions) {
    std::size_t last = static_cast<std::size_t>(-1);
    std::vector<std::size_t> bins;
    for (const auto& e : acq.events) bins.push_back(peak_bin(e));
    std::sort(bins.begin(), bins.end());
    for (std::size_t b : bins) {
      if (b != last) ++seen[b];
      last = b;
    }
  }
  const auto total = static_cast<double>(acquisitions.size());
  std::vector<double> weights;
  for (const auto& acq : acquisitions) {
    for (const auto& e : acq.events) {
      const double freq = static_cast<double>(seen[peak_bin(e)]) / total;
      if (freq > lo && freq < hi) weights.push_back(e.z);
    }
  }
  require(!weights.empty(), ErrorKind::data,
          "estimate_single_ion_weight: no rare ions found, insufficient data");
  const auto mid = weights.begin() + static_cast<std::ptrdiff_t>(weights.size() / 2);
  std::nth_element(weights.begin(), mid, weights.end());
  double median = *mid;
  if (weights.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(weights.begin(), mid));
  }
  return median / std::numbers::ln2;
}

std::vector<std::pair<double, double>> width_intensity_cdf(std::span<const double> x,
                                                           double min_height) {
  std::vector<double> ratios;
  for (const auto& p : find_pulses(x, min_height)) ratios.push_back(p.fwhm / x[p.peak]);
  std::sort(ratios.begin(), ratios.end());
  std::vector<std::pair<double, double>> cdf;
  const auto m = static_cast<double>(ratios.size());
  for (std::size_t k = 0; k < ratios.size(); ++k)
    cdf.emplace_back(ratios[k], static_cast<double>(k + 1) / m);
  return cdf;
}

double kolmogorov_distance(std::span<const std::pair<double, double>> a,
                           std::span<const std::pair<double, double>> b) {
  auto value_at = [](std::span<const std::pair<double, double>> cdf, double r) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r,
                               [](double v, const auto& p) { return v < p.first; });
    return it == cdf.begin() ? 0.0 : std::prev(it)->second;
  };
  double d = 0.0;
  for (const auto& p : a) d = std::max(d, std::abs(value_at(a, p.first) - value_at(b, p.first)));
  for (const auto& p : b) d = std::max(d, std::abs(value_at(a, p.first) - value_at(b, p.first)));
  return d;
}

}  // namespace atofms
