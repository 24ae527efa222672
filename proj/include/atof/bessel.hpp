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

namespace atofms {

/// Exponentially scaled modified Bessel function of the first kind,
/// e^(-x) * I_order(x), for order in {0, 1, 2} and finite x >= 0.
///
/// Uses the ascending power series below the crossover and the large-argument
/// asymptotic expansion above it. Relative error is below 1e-12 on [0, 1e6].
/// Throws Error(domain) on negative or non-finite x or an unsupported order.
double bessel_i_scaled(int order, double x);

struct ScaledBesselTriple {
  double i0;
  double i1;
  double i2;
};

/// e^(-x) * (I0(x), I1(x), I2(x)) evaluated in one pass.
ScaledBesselTriple bessel_i012_scaled(double x);

/// log I1(x) for x > 0 without overflow.
double log_bessel_i1(double x);

/// I1'(x) / I1(x) = (I0(x) + I2(x)) / (2 I1(x)) for x > 0.
/// Below 1e-8 the expansion 1/x + x/4 is used.
double bessel_i1_log_derivative(double x);

/// Argument above which the asymptotic expansion replaces the power series.
/// Exposed so the self test can run a negative control.
double bessel_crossover();
void set_bessel_crossover(double x);

inline constexpr double kDefaultBesselCrossover = 25.0;

}  // namespace atofms
