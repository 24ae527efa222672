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
#include <functional>
#include <span>
#include <vector>

#include "atof/model.hpp"
#include "atof/preprocess.hpp"
#include "atof/schedule.hpp"
#include "atof/simulator.hpp"
#include "atof/spectrum.hpp"

namespace atofms {

struct SolverParams {
  double gamma = 2.5e-3;   ///< step size
  double theta0 = 5e-4;    ///< final threshold
  double theta1 = 2e-2;    ///< continuation amplitude, theta = theta0 + theta1 / k^2
  std::size_t max_iters = 30;
  double tol = 1e-8;       ///< stop once max |w(k+1) - w(k)| < tol
  bool continuation = true;
  /// Assign events whose candidate intervals all carry zero rate instead of
  /// attributing them to chemical noise.
  bool keep_unsupported = false;
  unsigned threads = 1;

  /// Effective l1 weight of the limit objective.
  double lambda() const { return theta0 / gamma; }
  void validate() const;
  friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

struct IterationRecord {
  std::size_t iter = 0;   ///< k, starting at 1
  double theta = 0.0;     ///< threshold used to produce w(k)
  double cost = 0.0;      ///< C(w(k)) with lambda = theta0 / gamma
  double max_delta = 0.0; ///< max |w(k) - w(k-1)|
};

struct SolverState {
  RateVector w;
  std::size_t iterations = 0;
  double initial_cost = 0.0;  ///< C(w(0))
  std::vector<IterationRecord> history;
  bool converged = false;
};

/// max(v - theta, 0) elementwise.
std::vector<double> soft_threshold(std::span<const double> v, double theta);

/// Called after each iteration with k and w(k).
using IterationObserver = std::function<void(std::size_t, std::span<const double>)>;

/// Proximal gradient descent on nll_smooth + (theta / gamma) ||w||_1 with
/// w >= 0, starting from w = 0. Throws Error(data) on a non-finite gradient.
SolverState ista_solve(const LikelihoodContext& ctx, const ModelParams& mp,
                       const SolverParams& sp, const IterationObserver& observer = {});

/// Index of the interval (scan) with the largest rate mass; ties go to the
/// earliest firing.
std::size_t most_likely_neighbor(std::span<const double> w, const EventTerm& ev);

/// Copies each event's samples onto its most likely neighbor interval,
/// aligned so sample t lands on bin t - tau. Samples that fall outside the
/// scan are dropped. Events with zero rate on every candidate are skipped
/// unless keep_unsupported is set. The result is not normalized by N.
std::vector<double> assign_events(const LikelihoodContext& ctx, const EventList& ev,
                                  const FiringSchedule& sched, std::span<const double> w,
                                  bool keep_unsupported = false);

struct Reconstruction {
  SpectrumEstimate spectrum;  ///< per-scan normalized
  SolverState state;
  EventList events;
};

/// detect -> context -> solve -> assign -> divide by N.
Reconstruction reconstruct(const Trace& trace, const FiringSchedule& sched,
                           const DetectionParams& dp, const ModelParams& mp,
                           const SolverParams& sp);

/// Same pipeline from an already detected event list.
Reconstruction reconstruct_events(const EventList& events, const FiringSchedule& sched,
                                  const ModelParams& mp, const SolverParams& sp,
                                  const IterationObserver& observer = {});

}  // namespace atofms
