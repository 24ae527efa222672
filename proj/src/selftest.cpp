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

#include "atof/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "atof/error.hpp"
#include "atof/model.hpp"
#include "atof/rng.hpp"
#include "atof/schedule.hpp"

namespace atofms {
namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Random context with events spread over the trace of a random schedule.
struct Instance {
  FiringSchedule sched;
  LikelihoodContext ctx;
  std::vector<double> w;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> n_dist(5, 50), scans_dist(1, 6), events_dist(1, 30);
  const std::size_t n = n_dist(rng);
  const std::size_t scans = scans_dist(rng);
  const std::size_t gap_max = std::max<std::size_t>(2, n);
  Instance out;
  out.sched = generate_schedule(n, scans, 1, gap_max, rng());
  out.ctx.n = n;
  out.ctx.scans = scans;
  std::uniform_int_distribution<std::size_t> t_dist(0, out.sched.trace_length() - 1);
  std::uniform_int_distribution<std::size_t> len_dist(0, 4);
  std::uniform_real_distribution<double> z_dist(10.0, 2000.0), w_dist(0.01, 1.0);
  const std::size_t events = events_dist(rng);
  for (std::size_t a = 0; a < events; ++a) {
    const std::size_t t0 = t_dist(rng);
    const std::size_t t1 = std::min(out.sched.trace_length() - 1, t0 + len_dist(rng));
    out.ctx.events.push_back(make_event_term(z_dist(rng), out.sched.event_neighbors(t0, t1)));
  }
  out.w.resize(n);
  for (double& v : out.w) v = w_dist(rng);
  return out;
}

}  // namespace

long double series_density(long double z, long double s, long double mu) {
  const long double u = z / mu;
  long double sum = 0.0L;
  long double peak = 0.0L;
  for (int k = 1; k < 5000; ++k) {
    const long double kk = k;
    const long double log_term = -s - u + kk * std::log(s) - std::lgamma(kk + 1.0L) +
                                 (kk - 1.0L) * std::log(u) - std::lgamma(kk) - std::log(mu);
    const long double term = std::exp(log_term);
    sum += term;
    peak = std::max(peak, term);
    if (kk > s * u + 10.0L && term < 1e-30L * peak) break;
  }
  return sum;
}

SelfTestResult selftest_gradient(std::uint64_t seed) {
  auto rng = make_stream(seed, Stream::calibration, 101);
  const ModelParams mp{};
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    auto inst = random_instance(rng);
    const auto g = nll_gradient(inst.w, inst.ctx, mp);
    double scale = 0.0;
    for (double v : g) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < inst.w.size(); ++i) {
      const double h = 1e-6 * std::max(1.0, inst.w[i]);
      auto wp = inst.w, wm = inst.w;
      wp[i] += h;
      wm[i] -= h;
      const double fd =
          (nll_smooth(wp, inst.ctx, mp) - nll_smooth(wm, inst.ctx, mp)) / (2.0 * h);
      const double err = std::abs(fd - g[i]) / std::max({std::abs(g[i]), 1e-3 * scale, 1e-12});
      worst = std::max(worst, err);
    }
  }
  return {"gradient", worst <= 1e-5, "max rel err " + sci(worst)};
}

SelfTestResult selftest_series(std::uint64_t) {
  const double s_grid[] = {0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  const double u_grid[] = {0.01, 0.05, 0.1, 0.3, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0};
  const double mus[] = {1.0, 225.0};
  double worst = 0.0;
  std::size_t points = 0;
  for (double mu : mus) {
    const ModelParams mp{mu, 1e-4, 0.0};
    for (double s : s_grid) {
      for (double u : u_grid) {
        const double z = u * mu;
        const long double ref = series_density(z, s, mu);
        const double got = event_density(z, s, mp);
        const double err = static_cast<double>(std::abs((got - ref) / ref));
        worst = std::isfinite(err) ? std::max(worst, err) : INFINITY;
        ++points;
      }
    }
  }
  return {"series", worst <= 1e-9,
          std::to_string(points) + " points, max rel err " + sci(worst)};
}

SelfTestResult selftest_normalization(std::uint64_t) {
  // Composite 4-point Gauss-Legendre in u = z / mu; never touches u = 0.
  constexpr double nodes[] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                              0.8611363115940526};
  constexpr double weights[] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                0.3478548451374538};
  double worst = 0.0;
  for (double s : {0.5, 1.0, 5.0}) {
    for (double mu : {1.0, 225.0}) {
      const ModelParams mp{mu, 1e-4, 0.0};
      const double upper = 120.0;
      const int panels = 6000;
      const double h = upper / panels;
      double integral = 0.0;
      for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int q = 0; q < 4; ++q) {
          const double u = mid + 0.5 * h * nodes[q];
          integral += 0.5 * h * weights[q] * mu * event_density(u * mu, s, mp);
        }
      }
      const double total = event_density(0.0, s, mp) + integral;
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  return {"normalization", worst <= 1e-6, "max |mass - 1| " + sci(worst)};
}

SelfTestResult selftest_adjacency(std::uint64_t seed) {
  auto rng = make_stream(seed, Stream::calibration, 202);
  std::uniform_int_distribution<std::size_t> n_dist(1, 100), scans_dist(1, 20);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = n_dist(rng);
    const std::size_t scans = scans_dist(rng);
    std::uniform_int_distribution<std::size_t> gap(1, 2 * n + 1);
    const std::size_t a = gap(rng), b = gap(rng);
    const auto sched = generate_schedule(n, scans, std::min(a, b), std::max(a, b), rng());
    const DenseAdjacency dense(sched);
    const auto tau = sched.firing_times();
    for (std::size_t t = 0; t < sched.trace_length(); ++t) {
      if (sched.sample_neighbors(t) != dense.row(t))
        return {"adjacency", false, "sample mismatch at t=" + std::to_string(t)};
      // Event query over [t, t + 3] against intervals read off the dense rows.
      const std::size_t t1 = std::min(sched.trace_length() - 1, t + 3);
      std::vector<ScanInterval> expect;
      for (std::size_t l = 0; l < tau.size(); ++l) {
        std::size_t lo = SIZE_MAX, hi = 0;
        for (std::size_t u = t; u <= t1; ++u) {
          if (u < tau[l] || u - tau[l] >= n || !dense.at(u, u - tau[l])) continue;
          lo = std::min(lo, u - tau[l]);
          hi = std::max(hi, u - tau[l]);
        }
        if (lo != SIZE_MAX) expect.push_back({l, {lo, hi}});
      }
      if (sched.event_neighbors(t, t1) != expect)
        return {"adjacency", false, "event mismatch at t=" + std::to_string(t)};
    }
  }
  return {"adjacency", true, "100 schedules exact"};
}

std::vector<SelfTestResult> run_selftest(std::uint64_t seed) {
  using Suite = SelfTestResult (*)(std::uint64_t);
  const std::pair<const char*, Suite> suites[] = {{"gradient", selftest_gradient},
                                                   {"series", selftest_series},
                                                   {"normalization", selftest_normalization},
                                                   {"adjacency", selftest_adjacency}};
  std::vector<SelfTestResult> out;
  for (const auto& [name, suite] : suites) {
    try {
      out.push_back(suite(seed));
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }
  return out;
}

std::string format_selftest(const std::vector<SelfTestResult>& results) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    passed += r.passed ? 1 : 0;
  }
  os << passed << '/' << results.size() << " suites passed\n";
  return os.str();
}

}  // namespace atofms
