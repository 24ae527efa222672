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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <random>

#include "atof/error.hpp"
#include "atof/model.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace atofms;
using testing_support::finite_difference_gradient;
using testing_support::max_rel_diff;
using testing_support::random_instance;

namespace {

LikelihoodContext one_event(std::size_t n, double z, std::vector<ScanInterval> intervals) {
  LikelihoodContext ctx;
  ctx.n = n;
  ctx.scans = 2;
  ctx.events.push_back(make_event_term(z, std::move(intervals)));
  return ctx;
}

}  // namespace

TEST_CASE("log bessel ratio term at xi = 2") {
  const double mu = 225.0;
  const auto t = log_bessel_ratio_term(1.0, mu, mu);
  const long double i0 = oracle::bessel_series(0, 2.0L);
  const long double i1 = oracle::bessel_series(1, 2.0L);
  const long double i2 = oracle::bessel_series(2, 2.0L);
  CHECK(t.value == doctest::Approx(static_cast<double>(std::log(i1))).epsilon(1e-14));
  CHECK(t.d_ds == doctest::Approx(static_cast<double>(0.5L + (i0 + i2) / (2.0L * i1)))
                      .epsilon(1e-14));
}

TEST_CASE("log bessel ratio derivative matches finite differences") {
  const double s = 0.7, y = 3.1, mu = 1.4, h = 1e-6;
  const double fd =
      (log_bessel_ratio_term(s + h, y, mu).value - log_bessel_ratio_term(s - h, y, mu).value) /
      (2 * h);
  CHECK(std::abs(log_bessel_ratio_term(s, y, mu).d_ds - fd) / std::abs(fd) <= 1e-6);
}

TEST_CASE("log bessel ratio derivative diverges like 1/s as s goes to zero") {
  for (double s : {1e-6, 1e-10, 1e-14, 1e-20}) {
    const auto t = log_bessel_ratio_term(s, 2.0, 3.0);
    CHECK(std::isfinite(t.value));
    CHECK(t.d_ds * s == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("log bessel ratio term rejects non-positive inputs") {
  CHECK_THROWS_AS(log_bessel_ratio_term(0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(log_bessel_ratio_term(1.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(log_bessel_ratio_term(-1.0, 1.0, 1.0), Error);
}

TEST_CASE("event term is concave in s") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double s = std::pow(10.0, u(rng)), y = std::pow(10.0, u(rng) + 2.0);
    const double h = 1e-4 * s;
    const double second = (log_bessel_ratio_term(s + h, y, 225.0).d_ds -
                           log_bessel_ratio_term(s - h, y, 225.0).d_ds) /
                          (2 * h);
    CHECK(second <= 1e-9 * std::abs(log_bessel_ratio_term(s, y, 225.0).d_ds) / s);
  }
}

TEST_CASE("event density") {
  const ModelParams unit{1.0, 1e-4, 0.0};
  CHECK(event_density(0.0, 2.0, unit) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(event_density(0.0, 2.0, ModelParams{}) == event_density(0.0, 2.0, unit));

  SUBCASE("series with 50 terms equals the closed form") {
    const double want = static_cast<double>(oracle::mixture_density(1.0L, 1.0L, 1.0L, 50));
    CHECK(std::abs(event_density(1.0, 1.0, unit) - want) / want <= 1e-12);
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(event_density(-1.0, 1.0, unit), Error);
    CHECK_THROWS_AS(event_density(1.0, 0.0, unit), Error);
  }
}

TEST_CASE("event density integrates to one with the point mass") {
  boost::math::quadrature::exp_sinh<double> integrator;
  for (double s : {0.5, 1.0, 5.0}) {
    for (double mu : {1.0, 225.0}) {
      const ModelParams p{mu, 1e-4, 0.0};
      const double mass =
          integrator.integrate([&](double z) { return event_density(z, s, p); }, 1e-14);
      CHECK(std::abs(std::exp(-s) + mass - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("nll with no events is the l1 term") {
  LikelihoodContext ctx;
  ctx.n = 3;
  ctx.scans = 4;
  const ModelParams p{225.0, 1e-4, 0.7};
  const std::vector<double> w{0.1, 0.2, 0.4};
  CHECK(nll(w, ctx, p) == 0.7 * (0.1 + 0.2 + 0.4));
  const auto g = nll_gradient(w, ctx, p);
  CHECK(g == std::vector<double>(3, 0.0));
}

TEST_CASE("nll at w = 0 depends only on w0") {
  const ModelParams p{225.0, 1e-3, 0.0};
  auto ctx = one_event(10, 500.0, {{0, {2, 4}}, {1, {6, 7}}});
  const std::vector<double> w(10, 0.0);
  const double s = 5 * p.w0;
  const double want = -(0.5 * std::log(s) + oracle::log_bessel_i1(2 * std::sqrt(500.0 * s / p.mu))) / 2.0;
  CHECK(nll(w, ctx, p) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("gradient is symmetric over an event's neighbors") {
  const ModelParams p{};
  auto ctx = one_event(6, 800.0, {{0, {1, 1}}, {1, {4, 4}}});
  const std::vector<double> w{0.1, 0.3, 0.0, 0.2, 0.9, 0.0};
  const auto g = nll_gradient(w, ctx, p);
  CHECK(g[1] == g[4]);
  CHECK(g[0] == 0.0);
  CHECK(g[1] < 0.0);
}

TEST_CASE("gradient matches central differences on random instances") {
  std::mt19937_64 rng(2024);
  const ModelParams p{};
  for (int rep = 0; rep < 20; ++rep) {
    auto inst = random_instance(rng);
    const auto g = nll_gradient(inst.w, inst.ctx, p);
    const auto fd = finite_difference_gradient(
        inst.w, [&](const std::vector<double>& v) { return nll_smooth(v, inst.ctx, p); });
    CHECK(max_rel_diff(g, fd) <= 1e-5);
  }
}

TEST_CASE("evaluate_smooth returns nll_smooth and its gradient") {
  std::mt19937_64 rng(5);
  auto inst = random_instance(rng);
  const ModelParams p{};
  const auto e = evaluate_smooth(inst.w, inst.ctx, p);
  CHECK(e.value == nll_smooth(inst.w, inst.ctx, p));
  CHECK(e.gradient == nll_gradient(inst.w, inst.ctx, p));
}

TEST_CASE("gradient is bit-identical for any thread count") {
  std::mt19937_64 rng(9);
  LikelihoodContext ctx;
  ctx.n = 500;
  ctx.scans = 50;
  std::uniform_int_distribution<std::size_t> bin(0, 495);
  std::uniform_real_distribution<double> z(10.0, 1000.0);
  for (int a = 0; a < 6000; ++a) {
    const auto b = bin(rng);
    ctx.events.push_back(make_event_term(z(rng), {{0, {b, b + 2}}, {1, {bin(rng), 499}}}));
  }
  std::vector<double> w(500);
  for (auto& v : w) v = z(rng) / 1000.0;
  const ModelParams p{};
  const auto serial = evaluate_smooth(w, ctx, p, 1);
  const auto parallel = evaluate_smooth(w, ctx, p, 4);
  CHECK(serial.value == parallel.value);
  CHECK(serial.gradient == parallel.gradient);
}

TEST_CASE("nll is midpoint convex") {
  std::mt19937_64 rng(77);
  const ModelParams p{225.0, 1e-4, 0.3};
  int violations = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    auto inst = random_instance(rng, 20, 10);
    auto wb = inst.w;
    std::shuffle(wb.begin(), wb.end(), rng);
    std::vector<double> mid(wb.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (inst.w[i] + wb[i]);
    const double lhs = nll(mid, inst.ctx, p);
    const double rhs = 0.5 * (nll(inst.w, inst.ctx, p) + nll(wb, inst.ctx, p));
    violations += lhs <= rhs + 1e-10 ? 0 : 1;
  }
  CHECK(violations == 0);
}

TEST_CASE("weights enter only through z / mu") {
  std::mt19937_64 rng(3);
  auto inst = random_instance(rng);
  const double mu = 225.0;
  auto scaled = inst.ctx;
  for (auto& ev : scaled.events) ev.z /= mu;
  const auto a = evaluate_smooth(inst.w, inst.ctx, ModelParams{mu, 1e-4, 0.0});
  const auto b = evaluate_smooth(inst.w, scaled, ModelParams{1.0, 1e-4, 0.0});
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
  CHECK(max_rel_diff(a.gradient, b.gradient) < 1e-12);
}

TEST_CASE("input validation") {
  auto ctx = one_event(4, 10.0, {{0, {0, 1}}});
  const ModelParams p{};
  CHECK_THROWS_AS(nll(std::vector<double>(3, 0.0), ctx, p), Error);
  CHECK_THROWS_AS(nll(std::vector<double>{0, -1, 0, 0}, ctx, p), Error);
  CHECK_THROWS_AS(nll(std::vector<double>(4, 0.0), ctx, ModelParams{225.0, 0.0, 0.0}), Error);
  try {
    nll_gradient(std::vector<double>(3, 0.0), ctx, p);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::dimension);
  }
}
