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

#include "atof/spectrum.hpp"

#include <cstring>

namespace atofms {

std::uint64_t fnv1a(std::span<const std::byte> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::byte b : bytes) {
    h ^= static_cast<std::uint64_t>(b);
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_schedule(const FiringSchedule& sched) {
  const std::uint64_t n = sched.scan_length();
  std::uint64_t h = fnv1a(std::as_bytes(std::span(&n, 1)));
  for (std::size_t tau : sched.firing_times()) {
    const std::uint64_t v = tau;
    h = fnv1a(std::as_bytes(std::span(&v, 1)), h);
  }
  return h;
}

std::uint64_t hash_doubles(std::span<const double> values) {
  return fnv1a(std::as_bytes(values));
}

}  // namespace atofms
