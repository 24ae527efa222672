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

#include "atof/bessel.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

#include "atof/error.hpp"

namespace atofms {
namespace {

std::atomic<double> g_crossover{kDefaultBesselCrossover};

constexpr double kSeriesEps = 1e-17;

void check_argument(double x) {
  require(std::isfinite(x) && x >= 0.0, ErrorKind::domain,
          "bessel: argument must be finite and non-negative, got " +
              std::to_string(x));
}

// Ascending series sum_k (x/2)^(2k+order) / (k! (k+order)!), scaled by e^-x.
double series_scaled(int order, double x) {
  double term = 1.0;
  for (int j = 1; j <= order; ++j) term *= 0.5 * x / j;
  if (term == 0.0) return 0.0;
  const double q = 0.25 * x * x;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<double>(k) * (k + order));
    sum += term;
    if (term < kSeriesEps * sum) break;
  }
  return sum * std::exp(-x);
}

// Hankel expansion e^-x I_v(x) ~ (2 pi x)^-1/2 sum_k (-1)^k a_k(v) / x^k.
double asymptotic_scaled(int order, double x) {
  const double mu4 = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu4 - odd * odd) / (8.0 * k * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < kSeriesEps * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double scaled(int order, double x) {
  return x < g_crossover.load(std::memory_order_relaxed)
             ? series_scaled(order, x)
             : asymptotic_scaled(order, x);
}

}  // namespace

double bessel_crossover() { return g_crossover.load(); }

void set_bessel_crossover(double x) {
  require(x >= 0.0 && !std::isnan(x), ErrorKind::invalid_argument,
          "bessel crossover must be non-negative");
  g_crossover.store(x);
}

double bessel_i_scaled(int order, double x) {
  require(order >= 0 && order <= 2, ErrorKind::invalid_argument,
          "bessel: only orders 0, 1 and 2 are supported");
  check_argument(x);
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  return scaled(order, x);
}

ScaledBesselTriple bessel_i012_scaled(double x) {
  check_argument(x);
  if (x == 0.0) return {1.0, 0.0, 0.0};
  return {scaled(0, x), scaled(1, x), scaled(2, x)};
}

double log_bessel_i1(double x) {
  require(std::isfinite(x) && x > 0.0, ErrorKind::domain,
          "log_bessel_i1: argument must be positive and finite");
  if (x < 1e-8) return std::log(0.5 * x) + 0.125 * x * x;
  return std::log(scaled(1, x)) + x;
}

double bessel_i1_log_derivative(double x) {
  require(std::isfinite(x) && x > 0.0, ErrorKind::domain,
          "bessel_i1_log_derivative: argument must be positive and finite");
  if (x < 1e-8) return 1.0 / x + 0.25 * x;
  const auto b = bessel_i012_scaled(x);
  return (b.i0 + b.i2) / (2.0 * b.i1);
}

}  // namespace atofms
