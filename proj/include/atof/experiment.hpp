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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "atof/config.hpp"
#include "atof/evaluate.hpp"
#include "atof/simulator.hpp"
#include "atof/solver.hpp"

namespace atofms {

/// Everything cmd_simulate produces, kept in memory.
struct Simulation {
  GroundTruthSpec truth;
  FiringSchedule schedule;
  std::vector<ScanRealization> scans;
  Trace trace;
};

/// Deterministic in (config, seed).
Simulation simulate(const RunConfig& cfg);

/// Noiseless expected per-scan spectrum used as the evaluation truth.
std::vector<double> truth_spectrum(const RunConfig& cfg, const GroundTruthSpec& truth);

enum class Method { atof, naive, average };
Method parse_method(const std::string& name);
std::string method_name(Method m);

struct MethodResult {
  SpectrumEstimate spectrum;
  std::optional<SolverState> state;  ///< atof only
  EventList events;                  ///< trace events (empty for average)
};

/// Averaging needs the individual scans; the other methods use the trace.
MethodResult run_method(Method m, const RunConfig& cfg, const FiringSchedule& sched,
                        const Trace& trace, std::span<const ScanRealization> scans);

struct Scores {
  MatchReport events;
  MatchReport peaks;
  std::size_t reported = 0;  ///< estimated spectrum events
  std::vector<std::pair<double, double>> width_cdf;
};

/// Event- and peak-level scores of an estimate against a truth spectrum.
Scores score_spectrum(const RunConfig& cfg, std::span<const double> truth,
                      std::span<const double> estimate);

enum class SweepVariable { theta0, hw, spectrum_hw, iteration };
SweepVariable parse_sweep_variable(const std::string& name);
std::string sweep_variable_name(SweepVariable v);

struct CurvePoint {
  double value = 0.0;
  double tpr = 0.0;
  double fdr = 0.0;
  double fnr = 0.0;
  std::size_t reported = 0;
};

/// Runs the pipeline once per value on the same simulated inputs. Points run
/// on up to cfg.solver.threads workers; rows come back in value order. The
/// iteration variant runs ISTA once for the largest value and scores the
/// intermediate iterates.
std::vector<CurvePoint> curve_sweep(const RunConfig& cfg, const Simulation& sim, Method m,
                                    SweepVariable var, std::span<const double> values);

void write_curve(std::ostream& os, SweepVariable var, std::span<const CurvePoint> curve);

// File-level commands. All outputs land in cfg.out_dir.
void cmd_simulate(const RunConfig& cfg);
void cmd_reconstruct(const RunConfig& cfg, Method m);
void cmd_evaluate(const RunConfig& cfg, const std::filesystem::path& truth,
                  const std::filesystem::path& estimate);
void cmd_sweep(const RunConfig& cfg, SweepVariable var, std::span<const double> values);

/// Reads back what cmd_simulate wrote. Scans are loaded only when present.
Simulation load_simulation(const std::filesystem::path& dir);

}  // namespace atofms
