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

#include "atof/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "atof/bessel.hpp"
#include "atof/error.hpp"

namespace atofms {

void ModelParams::validate() const {
  require(std::isfinite(mu) && mu > 0.0, ErrorKind::invalid_argument,
          "model: mu must be positive");
  require(std::isfinite(w0) && w0 > 0.0, ErrorKind::invalid_argument,
          "model: w0 must be strictly positive");
  require(std::isfinite(lambda) && lambda >= 0.0, ErrorKind::invalid_argument,
          "model: lambda must be non-negative");
}

void LikelihoodContext::validate() const {
  require(n >= 1 && scans >= 1, ErrorKind::invalid_argument,
          "likelihood context: need n >= 1 and N >= 1");
  for (const auto& ev : events) {
    require(!ev.support.empty(), ErrorKind::invalid_argument,
            "likelihood context: event without neighbors");
    require(ev.support.back().hi < n, ErrorKind::invalid_argument,
            "likelihood context: neighbor index out of range");
  }
}

EventTerm make_event_term(double z, std::vector<ScanInterval> intervals) {
  EventTerm ev;
  ev.z = z;
  std::vector<BinInterval> sorted;
  sorted.reserve(intervals.size());
  for (const auto& si : intervals) sorted.push_back(si.bins);
  std::sort(sorted.begin(), sorted.end(),
            [](const BinInterval& a, const BinInterval& b) { return a.lo < b.lo; });
  for (const auto& b : sorted) {
    if (!ev.support.empty() && b.lo <= ev.support.back().hi + 1) {
      ev.support.back().hi = std::max(ev.support.back().hi, b.hi);
    } else {
      ev.support.push_back(b);
    }
  }
  for (const auto& b : ev.support) ev.support_size += b.width();
  ev.intervals = std::move(intervals);
  return ev;
}

LogBesselTerm log_bessel_ratio_term(double s, double y, double mu) {
  require(std::isfinite(s) && s > 0.0, ErrorKind::domain,
          "log_bessel_ratio_term: s must be positive, got " + std::to_string(s));
  require(std::isfinite(y) && y > 0.0, ErrorKind::domain,
          "log_bessel_ratio_term: y must be positive, got " + std::to_string(y));
  require(std::isfinite(mu) && mu > 0.0, ErrorKind::domain,
          "log_bessel_ratio_term: mu must be positive");
  const double xi = 2.0 * std::sqrt(y * s / mu);
  const double value = 0.5 * std::log(s) + log_bessel_i1(xi);
  const double d_ds = 0.5 / s + std::sqrt(y / (mu * s)) * bessel_i1_log_derivative(xi);
  return {value, d_ds};
}

double event_density(double z, double s, const ModelParams& params) {
  require(std::isfinite(z) && z >= 0.0, ErrorKind::domain,
          "event_density: z must be non-negative");
  require(std::isfinite(s) && s > 0.0, ErrorKind::domain,
          "event_density: s must be positive");
  require(params.mu > 0.0, ErrorKind::domain, "event_density: mu must be positive");
  if (z == 0.0) return std::exp(-s);
  const double mu = params.mu;
  const double xi = 2.0 * std::sqrt(z * s / mu);
  const double log_density =
      -z / mu - s + 0.5 * std::log(s / (z * mu)) + log_bessel_i1(xi);
  return std::exp(log_density);
}

double event_rate(std::span<const double> w, const EventTerm& ev, double w0) {
  double s = 0.0;
  for (const auto& b : ev.support)
    for (std::size_t i = b.lo; i <= b.hi; ++i) s += w[i];
  return s + static_cast<double>(ev.support_size) * w0;
}

namespace {

void check_inputs(std::span<const double> w, const LikelihoodContext& ctx,
                  const ModelParams& params) {
  params.validate();
  require(w.size() == ctx.n, ErrorKind::dimension,
          "nll: rate vector has " + std::to_string(w.size()) + " bins, context has " +
              std::to_string(ctx.n));
  require(ctx.scans >= 1, ErrorKind::invalid_argument, "nll: context has no scans");
  for (double v : w)
    require(v >= 0.0, ErrorKind::domain, "nll: rates must be non-negative");
}

// Per-event value and derivative in s, already scaled by -1/N.
struct EventFactor {
  double value;
  double slope;
};

std::vector<EventFactor> event_factors(std::span<const double> w,
                                       const LikelihoodContext& ctx,
                                       const ModelParams& params, unsigned threads) {
  const std::size_t count = ctx.events.size();
  std::vector<EventFactor> out(count);
  const double scale = -1.0 / static_cast<double>(ctx.scans);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      const auto& ev = ctx.events[a];
      const double s = event_rate(w, ev, params.w0);
      const auto term = log_bessel_ratio_term(s, ev.z, params.mu);
      out[a] = {scale * term.value, scale * term.d_ds};
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || count < 4096) {
    work(0, count);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t begin = 0; begin < count; begin += chunk)
      pool.emplace_back(work, begin, std::min(count, begin + chunk));
  }
  return out;
}

}  // namespace

SmoothEvaluation evaluate_smooth(std::span<const double> w, const LikelihoodContext& ctx,
                                 const ModelParams& params, unsigned threads) {
  check_inputs(w, ctx, params);
  SmoothEvaluation result;
  result.gradient.assign(ctx.n, 0.0);
  const auto factors = event_factors(w, ctx, params, threads);
  for (std::size_t a = 0; a < factors.size(); ++a) {
    result.value += factors[a].value;
    for (const auto& b : ctx.events[a].support)
      for (std::size_t i = b.lo; i <= b.hi; ++i) result.gradient[i] += factors[a].slope;
  }
  return result;
}

double nll_smooth(std::span<const double> w, const LikelihoodContext& ctx,
                  const ModelParams& params) {
  check_inputs(w, ctx, params);
  double value = 0.0;
  for (const auto& f : event_factors(w, ctx, params, 1)) value += f.value;
  return value;
}

double nll(std::span<const double> w, const LikelihoodContext& ctx,
           const ModelParams& params) {
  double l1 = 0.0;
  for (double v : w) l1 += v;
  return nll_smooth(w, ctx, params) + params.lambda * l1;
}

std::vector<double> nll_gradient(std::span<const double> w, const LikelihoodContext& ctx,
                                 const ModelParams& params, unsigned threads) {
  return evaluate_smooth(w, ctx, params, threads).gradient;
}

}  // namespace atofms
