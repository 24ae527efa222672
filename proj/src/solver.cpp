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

#include "atof/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "atof/error.hpp"

namespace atofms {

void SolverParams::validate() const {
  require(std::isfinite(gamma) && gamma > 0.0, ErrorKind::invalid_argument,
          "solver: gamma must be positive");
  require(std::isfinite(theta0) && std::isfinite(theta1) && theta0 >= 0.0 && theta1 >= 0.0,
          ErrorKind::invalid_argument, "solver: thresholds must be non-negative");
  require(max_iters >= 1, ErrorKind::invalid_argument, "solver: max_iters must be >= 1");
  require(std::isfinite(tol) && tol > 0.0, ErrorKind::invalid_argument,
          "solver: tol must be positive");
}

std::vector<double> soft_threshold(std::span<const double> v, double theta) {
  require(theta >= 0.0, ErrorKind::invalid_argument, "soft_threshold: theta must be >= 0");
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [theta](double x) { return std::max(x - theta, 0.0); });
  return out;
}

SolverState ista_solve(const LikelihoodContext& ctx, const ModelParams& mp,
                       const SolverParams& sp, const IterationObserver& observer) {
  mp.validate();
  sp.validate();
  ctx.validate();
  const double lambda = sp.lambda();
  auto cost_of = [&](const SmoothEvaluation& eval, std::span<const double> w) {
    return eval.value + lambda * std::accumulate(w.begin(), w.end(), 0.0);
  };

  SolverState state;
  state.w.assign(ctx.n, 0.0);
  std::vector<double> next(ctx.n);
  auto eval = evaluate_smooth(state.w, ctx, mp, sp.threads);
  state.initial_cost = cost_of(eval, state.w);

  for (std::size_t k = 1; k <= sp.max_iters; ++k) {
    const double kk = static_cast<double>(k);
    const double theta = sp.theta0 + (sp.continuation ? sp.theta1 / (kk * kk) : 0.0);
    double max_delta = 0.0;
    for (std::size_t i = 0; i < ctx.n; ++i) {
      const double g = eval.gradient[i];
      require(std::isfinite(g), ErrorKind::data, "ista_solve: non-finite gradient");
      next[i] = std::max(state.w[i] - sp.gamma * g - theta, 0.0);
      max_delta = std::max(max_delta, std::abs(next[i] - state.w[i]));
    }
    state.w.swap(next);
    state.iterations = k;
    eval = evaluate_smooth(state.w, ctx, mp, sp.threads);
    state.history.push_back({k, theta, cost_of(eval, state.w), max_delta});
    if (observer) observer(k, state.w);
    if (max_delta < sp.tol) {
      state.converged = true;
      break;
    }
  }
  return state;
}

std::size_t most_likely_neighbor(std::span<const double> w, const EventTerm& ev) {
  require(!ev.intervals.empty(), ErrorKind::invalid_argument,
          "assign_events: event without neighbors");
  std::size_t best = 0;
  double best_mass = -1.0;
  for (std::size_t j = 0; j < ev.intervals.size(); ++j) {
    const auto& b = ev.intervals[j].bins;
    double mass = 0.0;
    for (std::size_t i = b.lo; i <= b.hi; ++i) mass += w[i];
    if (mass > best_mass) {
      best_mass = mass;
      best = j;
    }
  }
  return best;
}

std::vector<double> assign_events(const LikelihoodContext& ctx, const EventList& ev,
                                  const FiringSchedule& sched, std::span<const double> w,
                                  bool keep_unsupported) {
  require(ctx.events.size() == ev.events.size(), ErrorKind::dimension,
          "assign_events: context and event list disagree");
  require(w.size() == ctx.n, ErrorKind::dimension, "assign_events: rate vector length");
  const auto tau = sched.firing_times();
  std::vector<double> x(ctx.n, 0.0);
  for (std::size_t a = 0; a < ev.events.size(); ++a) {
    const auto& term = ctx.events[a];
    const auto& best = term.intervals[most_likely_neighbor(w, term)];
    if (!keep_unsupported) {
      double mass = 0.0;
      for (std::size_t i = best.bins.lo; i <= best.bins.hi; ++i) mass += w[i];
      if (mass <= 0.0) continue;
    }
    const auto scan = best.scan;
    const auto& e = ev.events[a];
    for (std::size_t d = 0; d < e.samples.size(); ++d) {
      const std::size_t t = e.t_start + d;
      if (t < tau[scan]) continue;
      const std::size_t bin = t - tau[scan];
      if (bin < ctx.n) x[bin] += e.samples[d];
    }
  }
  return x;
}

Reconstruction reconstruct_events(const EventList& events, const FiringSchedule& sched,
                                  const ModelParams& mp, const SolverParams& sp,
                                  const IterationObserver& observer) {
  Reconstruction out;
  out.events = events;
  const auto ctx = events_to_context(events, sched);
  out.state = ista_solve(ctx, mp, sp, observer);
  out.spectrum.x = assign_events(ctx, events, sched, out.state.w, sp.keep_unsupported);
  const double inv_scans = 1.0 / static_cast<double>(sched.scans());
  for (double& v : out.spectrum.x) v *= inv_scans;
  out.spectrum.method = "atof";
  out.spectrum.schedule_hash = hash_schedule(sched);
  const double params[] = {mp.mu,      mp.w0,     sp.gamma,
                           sp.theta0,  sp.theta1, static_cast<double>(sp.max_iters),
                           sp.tol,     sp.continuation ? 1.0 : 0.0,
                           sp.keep_unsupported ? 1.0 : 0.0};
  out.spectrum.params_hash = hash_doubles(params);
  return out;
}

Reconstruction reconstruct(const Trace& trace, const FiringSchedule& sched,
                           const DetectionParams& dp, const ModelParams& mp,
                           const SolverParams& sp) {
  require(trace.length() == sched.trace_length(), ErrorKind::dimension,
          "reconstruct: trace length does not match the schedule");
  return reconstruct_events(detect_events(trace.y, dp), sched, mp, sp);
}

}  // namespace atofms
