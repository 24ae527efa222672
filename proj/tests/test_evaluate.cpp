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

#include <algorithm>
#include <cmath>
#include <random>

#include "atof/error.hpp"
#include "atof/evaluate.hpp"
#include "atof/rng.hpp"
#include "doctest.h"

using namespace atofms;

namespace {

EventList events_on(std::size_t total, std::vector<std::pair<std::size_t, std::size_t>> spans) {
  EventList ev;
  ev.total_samples = total;
  for (auto [a, b] : spans) ev.events.push_back({a, b, 1.0, std::vector<double>(b - a + 1, 1.0 / (b - a + 1))});
  return ev;
}

PeakList peaks_at(std::vector<double> mcrs) {
  PeakList out;
  double intensity = 100.0;
  for (double m : mcrs) out.push_back({m, intensity--, 0.0, 0.0});
  return out;
}

}  // namespace

TEST_CASE("contained estimate is a true positive") {
  const auto r = match_events(events_on(100, {{10, 20}}), events_on(100, {{12, 18}}));
  CHECK(r.tp == 1);
  CHECK(r.fp == 0);
  CHECK(r.fn == 0);
  CHECK(r.estimate_match[0] == std::optional<std::size_t>{0});
}

TEST_CASE("37.5 percent overlap is a false positive") {
  const auto r = match_events(events_on(100, {{10, 20}}), events_on(100, {{15, 30}}));
  CHECK(r.tp == 0);
  CHECK(r.fp == 1);
  CHECK(r.fn == 1);
  CHECK(r.tpr == 0.0);
  CHECK(r.fdr == 1.0);
}

TEST_CASE("exactly half the estimate's width counts") {
  CHECK(match_events(events_on(50, {{10, 20}}), events_on(50, {{17, 24}})).tp == 1);
  CHECK(match_events(events_on(50, {{10, 20}}), events_on(50, {{18, 25}})).tp == 0);
}

TEST_CASE("rates from counts") {
  MatchReport r;
  r.tp = 8;
  r.fp = 2;
  r.fn = 2;
  finalize_rates(r);
  CHECK(r.tpr == 0.8);
  CHECK(r.fdr == 0.2);
  CHECK(r.fnr == 0.2);
  CHECK(r.tpr + r.fnr == 1.0);
}

TEST_CASE("empty lists") {
  const auto r = match_events(events_on(10, {}), events_on(10, {}));
  CHECK(r.tpr == 1.0);
  CHECK(r.fnr == 0.0);
  CHECK(r.fdr == 0.0);
  const auto none_found = match_events(events_on(10, {{1, 2}}), events_on(10, {}));
  CHECK(none_found.fn == 1);
  CHECK(none_found.fdr == 0.0);
}

TEST_CASE("one truth event may validate several estimates") {
  const auto r = match_events(events_on(100, {{10, 30}}), events_on(100, {{10, 14}, {20, 25}}));
  CHECK(r.tp == 2);
  CHECK(r.fn == 0);
  CHECK(r.fdr == 0.0);
}

TEST_CASE("matching ignores list order and rejects mismatched axes") {
  const auto truth = events_on(500, {{10, 20}, {40, 55}, {100, 140}, {300, 302}});
  auto est = events_on(500, {{12, 15}, {50, 70}, {120, 125}, {301, 301}, {400, 410}});
  const auto sorted = match_events(truth, est);
  std::reverse(est.events.begin(), est.events.end());
  auto truth_shuffled = truth;
  std::reverse(truth_shuffled.events.begin(), truth_shuffled.events.end());
  const auto reversed = match_events(truth_shuffled, est);
  CHECK(sorted.tp == reversed.tp);
  CHECK(sorted.fp == reversed.fp);
  CHECK(sorted.fn == reversed.fn);
  CHECK_THROWS_AS(match_events(truth, events_on(499, {})), Error);
}

TEST_CASE("metric identities on random lists") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> start(0, 900), len(0, 20);
  for (int rep = 0; rep < 200; ++rep) {
    auto draw = [&] {
      std::vector<std::pair<std::size_t, std::size_t>> s;
      std::size_t t = start(rng) % 40;
      while (t < 950) {
        const auto l = len(rng);
        s.push_back({t, t + l});
        t += l + 2 + start(rng) % 60;
      }
      return events_on(1000, s);
    };
    const auto r = match_events(draw(), draw());
    CHECK(r.tpr + r.fnr == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.fdr >= 0.0);
    CHECK(r.fdr <= 1.0);
  }
}

TEST_CASE("peak picking") {
  const Calibration cal;
  SUBCASE("centroid of a symmetric pulse") {
    std::vector<double> x(200, 0.0);
    x[98] = 1;
    x[99] = 3;
    x[100] = 5;
    x[101] = 3;
    x[102] = 1;
    const auto p = pick_peaks(x, 0.5, cal);
    REQUIRE(p.size() == 1);
    CHECK(p[0].position == 100.0);
    CHECK(p[0].mcr == cal.mcr(100.0));
    CHECK(p[0].intensity == 5.0);
  }
  SUBCASE("two pulses separated by a zero gap") {
    const std::vector<double> x{0, 2, 4, 2, 0, 3, 6, 3, 0};
    const auto p = pick_peaks(x, 1.0, cal);
    REQUIRE(p.size() == 2);
    CHECK(p[0].position == 6.0);
    CHECK(p[1].position == 2.0);
  }
  SUBCASE("plateau gives one peak and the floor drops small ones") {
    const std::vector<double> x{0, 5, 5, 5, 0, 0.5, 0};
    const auto p = pick_peaks(x, 1.0, cal);
    REQUIRE(p.size() == 1);
    CHECK(p[0].position == 2.0);
  }
  SUBCASE("shifting the spectrum shifts every peak by mcr(s)") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(300, 0.0);
    for (std::size_t i = 20; i < 250; ++i) x[i] = u(rng) < 0.2 ? 10.0 * u(rng) : 0.0;
    std::vector<double> shifted(300, 0.0);
    for (std::size_t i = 0; i + 17 < 300; ++i) shifted[i + 17] = x[i];
    const auto a = pick_peaks(x, 0.5, cal);
    const auto b = pick_peaks(shifted, 0.5, cal);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK(b[k].mcr - a[k].mcr == doctest::Approx(cal.mcr(17.0)).epsilon(1e-9));
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(pick_peaks(std::vector<double>{1.0}, 0.0, cal), Error);
    CHECK_THROWS_AS(pick_peaks(std::vector<double>{1.0}, 1.0, Calibration{0.0, 1.0}), Error);
  }
}

TEST_CASE("peak matching") {
  SUBCASE("identical lists") {
    const auto p = peaks_at({1.0, 2.0, 3.5});
    const auto r = match_peaks(p, p, 400, 0.01);
    CHECK(r.tpr == 1.0);
    CHECK(r.fdr == 0.0);
  }
  SUBCASE("by hand") {
    const auto r = match_peaks(peaks_at({1.0, 2.0, 3.0}), peaks_at({1.005, 2.02, 5.0}), 400, 0.01);
    CHECK(r.tp == 1);
    CHECK(r.fp == 2);
    CHECK(r.fn == 2);
  }
  SUBCASE("wider tolerance never lowers TPR") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> m(1.0, 20.0), jitter(-0.05, 0.05);
    std::vector<double> truth, est;
    for (int k = 0; k < 300; ++k) {
      truth.push_back(m(rng));
      est.push_back(truth.back() + jitter(rng));
    }
    const auto wide = match_peaks(peaks_at(truth), peaks_at(est), 400, 0.1);
    const auto narrow = match_peaks(peaks_at(truth), peaks_at(est), 400, 0.01);
    CHECK(wide.tpr >= narrow.tpr);
  }
  SUBCASE("only the top k take part") {
    const auto truth = peaks_at({1.0, 2.0, 3.0, 4.0});
    const auto est = peaks_at({4.0, 3.0, 2.0, 1.0});
    const auto top2 = match_peaks(truth, est, 2, 0.01);
    CHECK(top2.tp == 0);
    CHECK(top2.fn == 2);
    CHECK(match_peaks(truth, est, 4, 0.01).tp == 4);
    CHECK_THROWS_AS(match_peaks(truth, est, 0, 0.01), Error);
    CHECK_THROWS_AS(match_peaks(truth, est, 4, 0.0), Error);
  }
}

TEST_CASE("width to intensity") {
  SUBCASE("FWHM 4 and height 8") {
    const std::vector<double> x{0, 2, 4, 6, 8, 6, 4, 2, 0};
    const auto cdf = width_intensity_cdf(x, 1.0);
    REQUIRE(cdf.size() == 1);
    CHECK(cdf[0].first == doctest::Approx(0.5));
    CHECK(cdf[0].second == 1.0);
  }
  SUBCASE("cdf is non-decreasing and ends at one") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(500);
    for (auto& v : x) v = u(rng) < 0.3 ? 5.0 * u(rng) : 0.0;
    const auto cdf = width_intensity_cdf(x, 0.1);
    REQUIRE(!cdf.empty());
    for (std::size_t k = 1; k < cdf.size(); ++k) {
      CHECK(cdf[k].first >= cdf[k - 1].first);
      CHECK(cdf[k].second > cdf[k - 1].second);
    }
    CHECK(cdf.back().second == 1.0);
  }
  SUBCASE("Kolmogorov distance") {
    const std::vector<std::pair<double, double>> a{{1.0, 0.5}, {2.0, 1.0}};
    const std::vector<std::pair<double, double>> b{{1.5, 1.0}};
    CHECK(kolmogorov_distance(a, a) == 0.0);
    CHECK(kolmogorov_distance(a, b) == doctest::Approx(0.5));
  }
}

TEST_CASE("single ion weight from rare ions") {
  const double mu = 225.0;
  auto rng = make_stream(1, Stream::calibration);
  std::exponential_distribution<double> weight(1.0 / mu);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Bins 0..49 are rare (hit in ~0.5% of acquisitions); bin 60 is always hit.
  std::vector<EventList> acqs(2000);
  for (auto& acq : acqs) {
    acq.total_samples = 100;
    for (std::size_t b = 0; b < 50; ++b)
      if (u(rng) < 0.005) acq.events.push_back({b, b, 0.0, {weight(rng)}});
    acq.events.push_back({60, 60, 0.0, {5000.0}});
    for (auto& e : acq.events) e.z = e.samples[0];
  }
  const double est = estimate_single_ion_weight(acqs);
  CHECK(std::abs(est - mu) / mu < 0.1);

  SUBCASE("scale equivariance") {
    auto scaled = acqs;
    for (auto& acq : scaled)
      for (auto& e : acq.events) {
        e.samples[0] *= 3.0;
        e.z *= 3.0;
      }
    CHECK(estimate_single_ion_weight(scaled) == doctest::Approx(3.0 * est).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(estimate_single_ion_weight(std::span(acqs).first(99)), Error);
    std::vector<EventList> abundant(200);
    for (auto& acq : abundant) {
      acq.total_samples = 10;
      acq.events.push_back({3, 3, 100.0, {100.0}});
    }
    try {
      estimate_single_ion_weight(abundant);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::data);
    }
    CHECK_THROWS_AS(estimate_single_ion_weight(acqs, 0.02, 0.01), Error);
  }
}
