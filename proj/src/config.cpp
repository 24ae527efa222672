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

#include "atof/config.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <type_traits>

#include "atof/error.hpp"

namespace atofms {
namespace {

// Calls f(section, key, field) for every field in file order.
template <typename Cfg, typename F>
void for_each_field(Cfg& c, F&& f) {
  auto& s = c.simulation;
  f("simulation", "n", s.n);
  f("simulation", "scans", s.scans);
  f("simulation", "acceleration", s.acceleration);
  f("simulation", "dtau_min", s.dtau_min);
  f("simulation", "dtau_max", s.dtau_max);
  f("simulation", "peaks", s.peaks.count);
  f("simulation", "rate_min", s.peaks.rate_min);
  f("simulation", "rate_max", s.peaks.rate_max);
  f("simulation", "peak_sigma", s.peaks.sigma);
  f("simulation", "margin", s.peaks.margin);
  f("simulation", "pulse_sigma", s.shape.pulse_sigma);
  f("simulation", "jitter_sd", s.shape.jitter_sd);
  f("simulation", "noise_sd", s.shape.noise_sd);
  f("simulation", "save_scans", s.save_scans);
  f("model", "mu", c.model.mu);
  f("model", "w0", c.model.w0);
  f("detection", "h0", c.detection.h0);
  f("detection", "hw", c.detection.hw);
  f("detection", "d_min", c.detection.d_min);
  f("solver", "gamma", c.solver.gamma);
  f("solver", "theta0", c.solver.theta0);
  f("solver", "theta1", c.solver.theta1);
  f("solver", "max_iters", c.solver.max_iters);
  f("solver", "tol", c.solver.tol);
  f("solver", "continuation", c.solver.continuation);
  f("solver", "keep_unsupported", c.solver.keep_unsupported);
  f("solver", "threads", c.solver.threads);
  auto& e = c.evaluation;
  f("evaluation", "k", e.k);
  f("evaluation", "delta_m", e.delta_m);
  f("evaluation", "min_height", e.min_height);
  f("evaluation", "c", e.calibration.c);
  f("evaluation", "sample_period", e.calibration.sample_period);
  f("spectrum_detection", "h0", e.spectrum_detection.h0);
  f("spectrum_detection", "hw", e.spectrum_detection.hw);
  f("spectrum_detection", "d_min", e.spectrum_detection.d_min);
  f("truth_detection", "h0", e.truth_detection.h0);
  f("truth_detection", "hw", e.truth_detection.hw);
  f("truth_detection", "d_min", e.truth_detection.d_min);
  f("run", "seed", c.seed);
  f("run", "out_dir", c.out_dir);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
void assign(T& field, std::string_view text, const std::string& where) {
  if constexpr (std::is_same_v<T, std::string>) {
    require(!text.empty(), ErrorKind::config, where + ": empty value");
    field = std::string(text);
  } else if constexpr (std::is_same_v<T, bool>) {
    if (text == "true" || text == "1") {
      field = true;
    } else if (text == "false" || text == "0") {
      field = false;
    } else {
      fail(ErrorKind::config, where + ": expected true or false");
    }
  } else {
    T v{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    require(res.ec == std::errc{} && res.ptr == end, ErrorKind::config,
            where + ": cannot parse '" + std::string(text) + "'");
    if constexpr (std::is_floating_point_v<T>)
      require(std::isfinite(v), ErrorKind::config, where + ": value must be finite");
    field = v;
  }
}

template <typename T>
std::string format_value(const T& v) {
  if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else {
    std::ostringstream os;
    if constexpr (std::is_floating_point_v<T>)
      os << std::setprecision(std::numeric_limits<T>::max_digits10);
    os << v;
    return os.str();
  }
}

}  // namespace

GapBounds SimulationConfig::gap_bounds() const {
  if (dtau_min == 0 && dtau_max == 0) return gap_bounds_for_acceleration(n, acceleration);
  return {dtau_min, dtau_max};
}

void RunConfig::validate() const {
  const auto& s = simulation;
  require(s.n >= 1 && s.scans >= 1, ErrorKind::config, "simulation: n and scans must be >= 1");
  require(std::isfinite(s.acceleration) && s.acceleration > 0.0, ErrorKind::config,
          "simulation: acceleration must be positive");
  require((s.dtau_min == 0) == (s.dtau_max == 0), ErrorKind::config,
          "simulation: set both dtau_min and dtau_max or neither");
  require(s.dtau_min <= s.dtau_max, ErrorKind::config, "simulation: dtau_min > dtau_max");
  require(s.peaks.rate_min > 0.0 && s.peaks.rate_min <= s.peaks.rate_max, ErrorKind::config,
          "simulation: need 0 < rate_min <= rate_max");
  require(s.peaks.sigma > 0.0, ErrorKind::config, "simulation: peak_sigma must be positive");
  require(2 * s.peaks.margin < s.n, ErrorKind::config, "simulation: margin leaves no room");
  require(s.shape.pulse_sigma > 0.0 && s.shape.jitter_sd >= 0.0 && s.shape.noise_sd >= 0.0,
          ErrorKind::config, "simulation: bad pulse_sigma, jitter_sd or noise_sd");
  require(evaluation.k >= 1 && evaluation.delta_m > 0.0 && evaluation.min_height > 0.0,
          ErrorKind::config, "evaluation: k, delta_m and min_height must be positive");
  require(out_dir.find_first_of("#\n") == std::string::npos, ErrorKind::config,
          "run: out_dir may not contain '#' or a newline");
  try {
    model.validate();
    detection.validate();
    solver.validate();
    evaluation.calibration.validate();
    evaluation.spectrum_detection.validate();
    evaluation.truth_detection.validate();
  } catch (const Error& e) {
    fail(ErrorKind::config, e.what());
  }
}

namespace {

bool key_matches(const std::string& dotted, std::string_view section, std::string_view key) {
  return dotted.size() == section.size() + 1 + key.size() &&
         dotted.compare(0, section.size(), section) == 0 && dotted[section.size()] == '.' &&
         dotted.compare(section.size() + 1, std::string::npos, key) == 0;
}

}  // namespace

std::string get_config_value(const RunConfig& cfg, const std::string& dotted_key) {
  std::optional<std::string> out;
  for_each_field(cfg, [&](std::string_view section, std::string_view key, const auto& field) {
    if (!out && key_matches(dotted_key, section, key)) out = format_value(field);
  });
  require(out.has_value(), ErrorKind::config, "unknown config key: " + dotted_key);
  return *out;
}

void set_config_value(RunConfig& cfg, const std::string& dotted_key, const std::string& value) {
  bool found = false;
  for_each_field(cfg, [&](std::string_view section, std::string_view key, auto& field) {
    if (found) return;
    if (key_matches(dotted_key, section, key)) {
      assign(field, trim(value), dotted_key);
      found = true;
    }
  });
  require(found, ErrorKind::config, "unknown config key: " + dotted_key);
}

RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view v = line;
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const std::string where = "config line " + std::to_string(lineno);
    if (v.front() == '[') {
      require(v.back() == ']', ErrorKind::config, where + ": unterminated section header");
      section = std::string(trim(v.substr(1, v.size() - 2)));
      continue;
    }
    const auto eq = v.find('=');
    require(eq != std::string_view::npos, ErrorKind::config, where + ": expected key = value");
    require(!section.empty(), ErrorKind::config, where + ": key outside any section");
    set_config_value(cfg, section + "." + std::string(trim(v.substr(0, eq))),
                     std::string(trim(v.substr(eq + 1))));
  }
  return cfg;
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

void serialize_config(std::ostream& os, const RunConfig& cfg) {
  std::string_view current;
  for_each_field(cfg, [&](std::string_view section, std::string_view key, const auto& field) {
    if (section != current) {
      if (!current.empty()) os << '\n';
      os << '[' << section << "]\n";
      current = section;
    }
    os << key << " = " << format_value(field) << '\n';
  });
}

std::string serialize_config_string(const RunConfig& cfg) {
  std::ostringstream os;
  serialize_config(os, cfg);
  return os.str();
}

}  // namespace atofms
