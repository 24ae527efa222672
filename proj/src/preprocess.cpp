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

#include "atof/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "atof/error.hpp"

namespace atofms {

void DetectionParams::validate() const {
  require(std::isfinite(h0) && std::isfinite(hw) && h0 > 0.0 && h0 <= hw,
          ErrorKind::invalid_argument, "detection: need 0 < h0 <= hw");
  require(d_min >= 1, ErrorKind::invalid_argument, "detection: d_min must be >= 1");
}

std::size_t EventList::zero_support_size() const {
  std::size_t covered = 0;
  for (const auto& e : events) covered += e.width();
  return total_samples - covered;
}

namespace {

Event make_event(std::span<const double> y, std::size_t t0, std::size_t t1) {
  Event e;
  e.t_start = t0;
  e.t_end = t1;
  e.samples.assign(y.begin() + static_cast<std::ptrdiff_t>(t0),
                   y.begin() + static_cast<std::ptrdiff_t>(t1) + 1);
  for (double v : e.samples) e.z += v;
  return e;
}

}  // namespace

EventList detect_events(std::span<const double> y, const DetectionParams& params) {
  params.validate();
  EventList out;
  out.total_samples = y.size();
  const std::size_t T = y.size();

  struct Span {
    std::size_t lo, hi;
  };
  std::vector<Span> supports;
  std::size_t t = 0;
  while (t < T) {
    if (y[t] < params.hw) {
      ++t;
      continue;
    }
    std::size_t run_end = t;
    while (run_end + 1 < T && y[run_end + 1] >= params.hw) ++run_end;
    if (run_end - t + 1 >= params.d_min) {
      std::size_t lo = t;
      while (lo > 0 && y[lo - 1] >= params.h0) --lo;
      std::size_t hi = run_end;
      while (hi + 1 < T && y[hi + 1] >= params.h0) ++hi;
      if (!supports.empty() && lo <= supports.back().hi + 1) {
        supports.back().hi = std::max(supports.back().hi, hi);
      } else {
        supports.push_back({lo, hi});
      }
    }
    t = run_end + 1;
  }

  out.events.reserve(supports.size());
  for (const auto& s : supports) out.events.push_back(make_event(y, s.lo, s.hi));
  return out;
}

EventList single_sample_events(std::span<const double> y) {
  EventList out;
  out.total_samples = y.size();
  for (std::size_t t = 0; t < y.size(); ++t)
    if (y[t] > 0.0) out.events.push_back(make_event(y, t, t));
  return out;
}

std::vector<double> zero_outside_events(std::span<const double> y, const EventList& ev) {
  require(y.size() == ev.total_samples, ErrorKind::dimension,
          "zero_outside_events: trace length does not match the event list");
  std::vector<double> out(y.size(), 0.0);
  for (const auto& e : ev.events)
    for (std::size_t t = e.t_start; t <= e.t_end; ++t) out[t] = y[t];
  return out;
}

LikelihoodContext events_to_context(const EventList& ev, const FiringSchedule& sched) {
  require(ev.total_samples == sched.trace_length(), ErrorKind::dimension,
          "events_to_context: event list covers " + std::to_string(ev.total_samples) +
              " samples but the schedule implies T=" + std::to_string(sched.trace_length()));
  LikelihoodContext ctx;
  ctx.n = sched.scan_length();
  ctx.scans = sched.scans();
  ctx.events.reserve(ev.events.size());
  for (const auto& e : ev.events)
    ctx.events.push_back(make_event_term(e.z, sched.event_neighbors(e.t_start, e.t_end)));
  return ctx;
}

void write_events_jsonl(std::ostream& os, const EventList& ev) {
  for (const auto& e : ev.events) {
    nlohmann::json j;
    j["t0"] = e.t_start;
    j["t1"] = e.t_end;
    j["z"] = e.z;
    j["samples"] = e.samples;
    os << j.dump() << '\n';
  }
}

EventList read_events_jsonl(std::istream& is, std::size_t total_samples) {
  EventList out;
  out.total_samples = total_samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Event e;
      e.t_start = j.at("t0").get<std::size_t>();
      e.t_end = j.at("t1").get<std::size_t>();
      e.z = j.at("z").get<double>();
      e.samples = j.at("samples").get<std::vector<double>>();
      require(e.t_start <= e.t_end && e.t_end < total_samples &&
                  e.samples.size() == e.width(),
              ErrorKind::data, "inconsistent event bounds");
      require(out.events.empty() || e.t_start > out.events.back().t_end, ErrorKind::data,
              "events must be sorted and disjoint");
      out.events.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      fail(ErrorKind::data, "event file line " + std::to_string(lineno) + ": " + ex.what());
    } catch (const Error& ex) {
      fail(ErrorKind::data, "event file line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

}  // namespace atofms
