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
#include <random>

namespace atofms {

// Named sub-streams derived from one root seed. Each component draws from its
// own stream so it can be re-run in isolation.
enum class Stream : std::uint32_t {
  schedule = 1,
  scans = 2,
  peaks = 3,
  noise = 4,
  calibration = 5,
};

inline std::mt19937_64 make_stream(std::uint64_t root, Stream stream,
                                   std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(root),
                    static_cast<std::uint32_t>(root >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace atofms
