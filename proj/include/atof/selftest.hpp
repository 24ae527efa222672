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
#include <string>
#include <vector>

namespace atofms {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;  ///< worst observed error or first mismatch
};

/// Gradient vs central differences on small random instances.
SelfTestResult selftest_gradient(std::uint64_t seed = 7);
/// Bessel-form density vs the Poisson-mixed Erlang series in long double.
SelfTestResult selftest_series(std::uint64_t seed = 7);
/// Point mass plus the integral of the continuous part equals one.
SelfTestResult selftest_normalization(std::uint64_t seed = 7);
/// Sparse neighbor queries vs the dense adjacency matrix.
SelfTestResult selftest_adjacency(std::uint64_t seed = 7);

std::vector<SelfTestResult> run_selftest(std::uint64_t seed = 7);

/// One line per suite and a final summary line.
std::string format_selftest(const std::vector<SelfTestResult>& results);

/// Long double series for the z > 0 density, independent of the Bessel path.
long double series_density(long double z, long double s, long double mu);

}  // namespace atofms
