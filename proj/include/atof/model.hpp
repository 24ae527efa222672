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
#include <span>
#include <vector>

#include "atof/schedule.hpp"

namespace atofms {

/// Detector and prior constants.
///
/// Rates are expressed in ions per bin per scan. The likelihood uses event
/// weights in units of mu, so (w, mu) and (w / mu, 1) describe the same model
/// up to a constant.
struct ModelParams {
  double mu = 225.0;      ///< mean single-impact weight (ADC units)
  double w0 = 1e-4;       ///< chemical-noise rate per bin per scan
  double lambda = 0.0;    ///< l1 weight applied by nll()

  void validate() const;
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

using RateVector = std::vector<double>;

/// One observed event as seen by the likelihood.
struct EventTerm {
  double z = 0.0;                       ///< weight, sum of the event samples
  std::vector<ScanInterval> intervals;  ///< one per candidate scan
  std::vector<BinInterval> support;     ///< union of intervals, disjoint and sorted
  std::size_t support_size = 0;         ///< |support|
};

/// Everything the likelihood needs about a preprocessed trace.
struct LikelihoodContext {
  std::size_t n = 0;      ///< bins
  std::size_t scans = 0;  ///< N
  std::vector<EventTerm> events;

  void validate() const;
};

/// Builds an EventTerm from the per-scan intervals returned by the schedule.
EventTerm make_event_term(double z, std::vector<ScanInterval> intervals);

struct LogBesselTerm {
  double value;  ///< log(sqrt(s) * I1(xi)),  xi = 2 sqrt(y s / mu)
  double d_ds;   ///< derivative of value in s
};

LogBesselTerm log_bessel_ratio_term(double s, double y, double mu);

/// Density of an event weight z given cumulative rate s: a point mass e^-s at
/// z = 0 and the Poisson-mixed Erlang density for z > 0.
double event_density(double z, double s, const ModelParams& params);

/// Cumulative rate sum over the event support of (w[i] + w0).
double event_rate(std::span<const double> w, const EventTerm& ev, double w0);

/// Smooth part of the per-scan negative log-likelihood,
///   -(1/N) sum_a [ 1/2 log(s_a) + log I1(2 sqrt(z_a s_a / mu)) ],
/// dropping terms that do not depend on w.
double nll_smooth(std::span<const double> w, const LikelihoodContext& ctx,
                  const ModelParams& params);

/// nll_smooth + lambda * ||w||_1.
double nll(std::span<const double> w, const LikelihoodContext& ctx,
           const ModelParams& params);

/// Gradient of nll_smooth. Per-event factors may be evaluated on `threads`
/// workers; they are always scattered in event order so the result is
/// bit-identical for any thread count.
std::vector<double> nll_gradient(std::span<const double> w, const LikelihoodContext& ctx,
                                 const ModelParams& params, unsigned threads = 1);

struct SmoothEvaluation {
  double value = 0.0;
  std::vector<double> gradient;
};

/// Value and gradient of nll_smooth in one pass over the events.
SmoothEvaluation evaluate_smooth(std::span<const double> w, const LikelihoodContext& ctx,
                                 const ModelParams& params, unsigned threads = 1);

}  // namespace atofms
