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

// Small builders shared by the test binaries.

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "atof/model.hpp"
#include "atof/schedule.hpp"

namespace testing_support {

struct RandomInstance {
  atofms::FiringSchedule sched;
  atofms::LikelihoodContext ctx;
  std::vector<double> w;
};

// Random schedule with overlapping scans and up to max_events multi-sample events.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_n = 50,
                                      std::size_t max_events = 30) {
  std::uniform_int_distribution<std::size_t> n_dist(4, max_n), scans_dist(1, 8),
      events_dist(1, max_events), len_dist(0, 3);
  RandomInstance out;
  const std::size_t n = n_dist(rng);
  const std::size_t scans = scans_dist(rng);
  out.sched = atofms::generate_schedule(n, scans, 1, std::max<std::size_t>(2, n / 2), rng());
  out.ctx.n = n;
  out.ctx.scans = scans;
  std::uniform_int_distribution<std::size_t> t_dist(0, out.sched.trace_length() - 1);
  std::uniform_real_distribution<double> z_dist(5.0, 3000.0), w_dist(0.0, 1.5);
  const std::size_t events = events_dist(rng);
  for (std::size_t a = 0; a < events; ++a) {
    const std::size_t t0 = t_dist(rng);
    const std::size_t t1 = std::min(out.sched.trace_length() - 1, t0 + len_dist(rng));
    out.ctx.events.push_back(
        atofms::make_event_term(z_dist(rng), out.sched.event_neighbors(t0, t1)));
  }
  out.w.resize(n);
  for (double& v : out.w) v = w_dist(rng);
  return out;
}

// Largest |a - b| relative to the largest |b|.
inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(b[i]));
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

// Central differences of f along every coordinate of w.
template <typename F>
std::vector<double> finite_difference_gradient(const std::vector<double>& w, F&& f) {
  std::vector<double> g(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, w[i]);
    auto wp = w, wm = w;
    wp[i] += h;
    wm[i] = std::max(0.0, wm[i] - h);
    g[i] = (f(wp) - f(wm)) / (wp[i] - wm[i]);
  }
  return g;
}

}  // namespace testing_support
