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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "atof/schedule.hpp"

namespace atofms {

/// Reconstructed spectrum on n bins, in ADC units per scan.
struct SpectrumEstimate {
  std::vector<double> x;
  std::string method;
  std::uint64_t schedule_hash = 0;
  std::uint64_t params_hash = 0;
};

/// FNV-1a over raw bytes; stable across platforms with the same endianness.
std::uint64_t fnv1a(std::span<const std::byte> bytes,
                    std::uint64_t seed = 14695981039346656037ull);
std::uint64_t hash_schedule(const FiringSchedule& sched);
std::uint64_t hash_doubles(std::span<const double> values);

}  // namespace atofms
