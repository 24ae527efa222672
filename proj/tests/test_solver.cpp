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

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "atof/error.hpp"
#include "atof/simulator.hpp"
#include "atof/solver.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace atofms;

namespace {

// Derivative of -(1/N)[1/2 log s + log I1(2 sqrt(z s / mu))] + lambda w in w,
// computed with an independent Bessel implementation.
double per_bin_slope(double w, double z, double mu, double w0, double scans, double lambda) {
  const double s = w + w0;
  const double xi = 2.0 * std::sqrt(z * s / mu);
  const double ratio = (boost::math::cyl_bessel_i(0, xi) + boost::math::cyl_bessel_i(2, xi)) /
                       (2.0 * boost::math::cyl_bessel_i(1, xi));
  const double d_ds = 0.5 / s + std::sqrt(z / (mu * s)) * ratio;
  return -d_ds / scans + lambda;
}

// One-dimensional minimizer on w >= 0 by bisection on the slope.
double per_bin_optimum(double z, double mu, double w0, double scans, double lambda) {
  if (per_bin_slope(0.0, z, mu, w0, scans, lambda) >= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (per_bin_slope(hi, z, mu, w0, scans, lambda) < 0.0) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (per_bin_slope(mid, z, mu, w0, scans, lambda) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Single scan with single-sample events on a few bins.
struct TofInstance {
  FiringSchedule sched{12, {0}};
  EventList events;
  LikelihoodContext ctx;
};

TofInstance tof_instance() {
  TofInstance inst;
  const std::vector<double> y{0, 450, 0, 0, 90, 0, 2000, 0, 0, 30, 0, 0};
  inst.events = single_sample_events(y);
  inst.ctx = events_to_context(inst.events, inst.sched);
  return inst;
}

// Small overlapping acquisition built from the simulator.
struct Acquisition {
  FiringSchedule sched;
  EventList events;
  LikelihoodContext ctx;
};

Acquisition small_acquisition(std::uint64_t seed, double acceleration = 4.0) {
  const std::size_t n = 2000, scans = 40;
  const auto truth = random_ground_truth(n, 1e-4, 2.0, {20, 0.02, 0.4, 1.0, 30}, seed);
  const auto g = gap_bounds_for_acceleration(n, acceleration);
  Acquisition a;
  a.sched = generate_schedule(n, scans, g.dtau_min, g.dtau_max, seed);
  const auto w = rate_vector_of(truth);
  std::vector<ScanRealization> xs;
  for (std::size_t l = 0; l < scans; ++l) xs.push_back(draw_scan(w, ModelParams{}, {}, seed, l));
  const auto trace = assemble_trace(xs, a.sched);
  a.events = detect_events(trace.y, {});
  a.ctx = events_to_context(a.events, a.sched);
  return a;
}

double total(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("soft threshold") {
  CHECK(soft_threshold(std::vector<double>{1.2}, 0.5)[0] == doctest::Approx(0.7));
  CHECK(soft_threshold(std::vector<double>{-0.3}, 0.5)[0] == 0.0);
  CHECK(soft_threshold(std::vector<double>{-2.0, 0.0, 3.5}, 0.0) ==
        std::vector<double>{0.0, 0.0, 3.5});
  CHECK_THROWS_AS(soft_threshold(std::vector<double>{1.0}, -0.1), Error);
}

TEST_CASE("no events leaves w at zero") {
  LikelihoodContext ctx;
  ctx.n = 8;
  ctx.scans = 3;
  const auto st = ista_solve(ctx, ModelParams{}, SolverParams{});
  CHECK(st.iterations == 1);
  CHECK(st.converged);
  CHECK(st.w == std::vector<double>(8, 0.0));
}

TEST_CASE("single-scan events reach the per-bin optimum") {
  const auto inst = tof_instance();
  SolverParams sp;
  sp.gamma = 1.0;
  sp.theta0 = 1.0;
  sp.continuation = false;
  sp.max_iters = 200000;
  sp.tol = 1e-12;
  const ModelParams mp{};
  const auto st = ista_solve(inst.ctx, mp, sp);
  REQUIRE(st.converged);
  std::vector<double> z(12, 0.0);
  for (const auto& e : inst.events.events) z[e.t_start] = e.z;
  for (std::size_t i = 0; i < 12; ++i) {
    if (z[i] == 0.0) {
      CHECK(st.w[i] == 0.0);
    } else {
      const double want = per_bin_optimum(z[i], mp.mu, mp.w0, 1.0, sp.lambda());
      CHECK(want > 0.0);
      CHECK(st.w[i] == doctest::Approx(want).epsilon(1e-8));
    }
  }

  SUBCASE("stationarity on the support") {
    const auto g = nll_gradient(st.w, inst.ctx, mp);
    for (std::size_t i = 0; i < 12; ++i)
      if (st.w[i] > 0.0) CHECK(std::abs(g[i] + sp.lambda()) <= 10.0 * sp.tol);
  }
}

TEST_CASE("iterates stay non-negative and the fixed-step cost descends") {
  const auto acq = small_acquisition(3);
  REQUIRE(acq.ctx.events.size() > 50);
  SolverParams sp;
  sp.continuation = false;
  sp.max_iters = 50;
  sp.tol = 1e-300;
  bool nonneg = true;
  const auto st = ista_solve(acq.ctx, ModelParams{}, sp,
                             [&](std::size_t, std::span<const double> w) {
                               for (double v : w) nonneg = nonneg && v >= 0.0;
                             });
  CHECK(nonneg);
  CHECK(st.history.size() == 50);
  double prev = st.initial_cost;
  for (const auto& r : st.history) {
    CHECK(r.cost <= prev + 1e-12);
    CHECK(r.theta == sp.theta0);
    prev = r.cost;
  }
}

TEST_CASE("continuation schedule") {
  const auto acq = small_acquisition(4);
  SolverParams sp;
  sp.max_iters = 5;
  const auto st = ista_solve(acq.ctx, ModelParams{}, sp);
  REQUIRE(st.history.size() == 5);
  for (const auto& r : st.history) {
    const double k = static_cast<double>(r.iter);
    CHECK(r.theta == doctest::Approx(sp.theta0 + sp.theta1 / (k * k)));
  }
}

TEST_CASE("assignment") {
  const FiringSchedule sched(4, {0, 3, 5});
  EventList ev;
  ev.total_samples = 9;
  ev.events.push_back({5, 6, 11.0, {5.0, 6.0}});
  const auto ctx = events_to_context(ev, sched);

  SUBCASE("goes to the heavier interval") {
    const std::vector<double> w{0.9, 0.1, 0.0, 0.0};
    CHECK(assign_events(ctx, ev, sched, w) == std::vector<double>{5.0, 6.0, 0.0, 0.0});
    const std::vector<double> v{0.0, 0.0, 0.5, 0.1};
    CHECK(assign_events(ctx, ev, sched, v) == std::vector<double>{0.0, 0.0, 5.0, 6.0});
  }
  SUBCASE("ties go to the earliest firing") {
    const std::vector<double> w(4, 0.25);
    CHECK(assign_events(ctx, ev, sched, w) == std::vector<double>{0.0, 0.0, 5.0, 6.0});
  }
  SUBCASE("events with no rate on any candidate are left out unless kept") {
    const std::vector<double> w(4, 0.0);
    CHECK(assign_events(ctx, ev, sched, w) == std::vector<double>(4, 0.0));
    CHECK(assign_events(ctx, ev, sched, w, true) == std::vector<double>{0.0, 0.0, 5.0, 6.0});
    const std::vector<double> tiny{0.0, 0.0, 0.0, 1e-300};
    CHECK(assign_events(ctx, ev, sched, tiny) == std::vector<double>{0.0, 0.0, 5.0, 6.0});
  }
  SUBCASE("unchanged by scaling w") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> w(4);
      for (auto& x : w) x = u(rng);
      auto scaled = w;
      for (auto& x : scaled) x *= 37.5;
      CHECK(most_likely_neighbor(w, ctx.events[0]) == most_likely_neighbor(scaled, ctx.events[0]));
    }
  }
}

TEST_CASE("assignment conserves the mass of unclipped events") {
  const auto acq = small_acquisition(5);
  const auto st = ista_solve(acq.ctx, ModelParams{}, SolverParams{});
  const auto x = assign_events(acq.ctx, acq.events, acq.sched, st.w, true);
  // Samples before the chosen scan fired or past its end have no bin to land on.
  const auto tau = acq.sched.firing_times();
  double mass = 0.0, kept = 0.0;
  for (std::size_t a = 0; a < acq.events.events.size(); ++a) {
    const auto& e = acq.events.events[a];
    const auto& term = acq.ctx.events[a];
    const auto l = term.intervals[most_likely_neighbor(st.w, term)].scan;
    mass += e.z;
    for (std::size_t t = e.t_start; t <= e.t_end; ++t)
      if (t >= tau[l] && t - tau[l] < 2000) kept += e.samples[t - e.t_start];
  }
  CHECK(total(x) == doctest::Approx(kept).epsilon(1e-12));
  CHECK(kept >= 0.99 * mass);
}

TEST_CASE("degree one everywhere reproduces the folded trace") {
  const auto acq = small_acquisition(6, 1.0);
  for (const auto& term : acq.ctx.events) REQUIRE(term.intervals.size() == 1);
  const auto x =
      assign_events(acq.ctx, acq.events, acq.sched, std::vector<double>(2000, 0.0), true);
  std::vector<double> folded(2000, 0.0);
  const auto tau = acq.sched.firing_times();
  for (const auto& e : acq.events.events) {
    const auto l = static_cast<std::size_t>(
        std::upper_bound(tau.begin(), tau.end(), e.t_start) - tau.begin() - 1);
    for (std::size_t t = e.t_start; t <= e.t_end; ++t) folded[t - tau[l]] += e.samples[t - e.t_start];
  }
  CHECK(x == folded);
}

TEST_CASE("reconstruct") {
  SUBCASE("empty trace gives a zero spectrum") {
    const FiringSchedule sched(50, {0, 20, 45});
    Trace trace{50, 3, std::vector<double>(sched.trace_length(), 0.0)};
    const auto rec = reconstruct(trace, sched, {}, ModelParams{}, SolverParams{});
    CHECK(rec.spectrum.x == std::vector<double>(50, 0.0));
    CHECK(rec.spectrum.method == "atof");
  }
  SUBCASE("length mismatch") {
    const FiringSchedule sched(50, {0, 20});
    Trace trace{50, 2, std::vector<double>(60, 0.0)};
    CHECK_THROWS_AS(reconstruct(trace, sched, {}, ModelParams{}, SolverParams{}), Error);
  }
  SUBCASE("bit-reproducible and normalized per scan") {
    const auto acq = small_acquisition(7);
    const auto a = reconstruct_events(acq.events, acq.sched, ModelParams{}, SolverParams{});
    const auto b = reconstruct_events(acq.events, acq.sched, ModelParams{}, SolverParams{});
    CHECK(a.spectrum.x == b.spectrum.x);
    CHECK(a.spectrum.params_hash == b.spectrum.params_hash);
    const auto raw = assign_events(acq.ctx, acq.events, acq.sched, a.state.w);
    CHECK(total(a.spectrum.x) == doctest::Approx(total(raw) / 40.0).epsilon(1e-12));
  }
}

TEST_CASE("solver parameter validation") {
  SolverParams sp;
  sp.gamma = 0.0;
  CHECK_THROWS_AS(sp.validate(), Error);
  sp = {};
  sp.max_iters = 0;
  CHECK_THROWS_AS(sp.validate(), Error);
  sp = {};
  sp.theta0 = -1.0;
  CHECK_THROWS_AS(sp.validate(), Error);
  CHECK(SolverParams{}.lambda() == doctest::Approx(0.2));
}
