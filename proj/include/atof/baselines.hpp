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

#include <span>

#include "atof/preprocess.hpp"
#include "atof/schedule.hpp"
#include "atof/simulator.hpp"
#include "atof/spectrum.hpp"

namespace atofms {

/// Conventional TOF: mean of the scans.
SpectrumEstimate average_scans(std::span<const ScanRealization> scans);

/// Naive ATOF: every event is copied to each of its deg(a) candidate
/// intervals with weight 1 / deg(a), then divided by N.
SpectrumEstimate naive_atof(const EventList& ev, const FiringSchedule& sched);

/// Per-sample form x[i] = (1/N) sum_t A[t, i] y[t] / deg(t).
SpectrumEstimate naive_atof_samples(std::span<const double> y, const FiringSchedule& sched);

}  // namespace atofms
