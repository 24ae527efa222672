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
#include <iosfwd>
#include <string>

#include "atof/evaluate.hpp"
#include "atof/model.hpp"
#include "atof/preprocess.hpp"
#include "atof/schedule.hpp"
#include "atof/simulator.hpp"
#include "atof/solver.hpp"

namespace atofms {

struct SimulationConfig {
  std::size_t n = 20000;
  std::size_t scans = 200;
  double acceleration = 4.0;
  /// Explicit gap bounds; both zero means derive them from `acceleration`.
  std::size_t dtau_min = 0;
  std::size_t dtau_max = 0;
  PeakListOptions peaks;
  ScanShape shape;
  bool save_scans = true;

  GapBounds gap_bounds() const;
  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

struct EvaluationConfig {
  std::size_t k = 400;
  double delta_m = 0.01;
  double min_height = 0.05;  ///< peak picker floor, ADC units per scan
  Calibration calibration;
  /// Event detection applied to estimated spectra when scoring them.
  DetectionParams spectrum_detection{0.05, 0.3, 2};
  /// Event detection for the reference spectrum. Kept separate so sweeping
  /// the estimate threshold does not move the truth.
  DetectionParams truth_detection{0.05, 0.05, 2};
  friend bool operator==(const EvaluationConfig&, const EvaluationConfig&) = default;
};

/// Every parameter of one experiment. Text form is `key = value` lines under
/// `[section]` headers; `#` starts a comment.
struct RunConfig {
  SimulationConfig simulation;
  ModelParams model;
  DetectionParams detection;
  SolverParams solver;
  EvaluationConfig evaluation;
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Missing keys keep their defaults; unknown keys or bad values throw config errors.
RunConfig parse_config(std::istream& is);
RunConfig parse_config_string(const std::string& text);
void serialize_config(std::ostream& os, const RunConfig& cfg);
std::string serialize_config_string(const RunConfig& cfg);

/// Sets one field by its dotted name, e.g. "solver.theta0".
void set_config_value(RunConfig& cfg, const std::string& dotted_key, const std::string& value);
std::string get_config_value(const RunConfig& cfg, const std::string& dotted_key);

}  // namespace atofms
