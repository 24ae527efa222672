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

#include "atof/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "atof/baselines.hpp"
#include "atof/error.hpp"
#include "atof/io.hpp"

namespace atofms {
namespace {

namespace fs = std::filesystem;

constexpr const char* kConfigFile = "config.ini";
constexpr const char* kTruthSpecFile = "truth.txt";
constexpr const char* kTruthSpectrumFile = "truth.spc";
constexpr const char* kScheduleFile = "schedule.txt";
constexpr const char* kTraceFile = "trace.trc";
constexpr const char* kScansFile = "scans.scn";
constexpr const char* kAcquisitionFile = "acquisition.csv";

std::string spectrum_file(Method m) { return "spectrum_" + method_name(m) + ".spc"; }

void print_report_row(std::ostream& os, const char* level, const MatchReport& r) {
  os << level << ',' << r.tp << ',' << r.fp << ',' << r.fn << ',' << r.tpr << ',' << r.fdr << ','
     << r.fnr << '\n';
}

void write_matches(std::ostream& os, const char* level, const MatchReport& r) {
  for (std::size_t j = 0; j < r.estimate_match.size(); ++j) {
    nlohmann::json line = {{"level", level}, {"estimate", j}};
    line["truth"] = r.estimate_match[j] ? nlohmann::json(*r.estimate_match[j]) : nlohmann::json();
    os << line.dump() << '\n';
  }
}

RunConfig with_value(RunConfig cfg, SweepVariable var, double value) {
  switch (var) {
    case SweepVariable::theta0:
      cfg.solver.theta0 = value;
      break;
    case SweepVariable::hw:
      cfg.detection.hw = value;
      break;
    case SweepVariable::spectrum_hw:
      cfg.evaluation.spectrum_detection.hw = value;
      break;
    case SweepVariable::iteration:
      break;
  }
  cfg.validate();
  return cfg;
}

CurvePoint to_point(double value, const Scores& s) {
  return {value, s.events.tpr, s.events.fdr, s.events.fnr, s.reported};
}

}  // namespace

Simulation simulate(const RunConfig& cfg) {
  cfg.validate();
  const auto& s = cfg.simulation;
  Simulation sim;
  sim.truth = random_ground_truth(s.n, cfg.model.w0, s.shape.pulse_sigma, s.peaks, cfg.seed);
  const auto gaps = s.gap_bounds();
  sim.schedule = generate_schedule(s.n, s.scans, gaps.dtau_min, gaps.dtau_max, cfg.seed);
  const auto w = rate_vector_of(sim.truth);
  sim.scans.reserve(s.scans);
  for (std::size_t l = 0; l < s.scans; ++l)
    sim.scans.push_back(draw_scan(w, cfg.model, s.shape, cfg.seed, l));
  sim.trace = assemble_trace(sim.scans, sim.schedule);
  return sim;
}

std::vector<double> truth_spectrum(const RunConfig& cfg, const GroundTruthSpec& truth) {
  return expected_spectrum(truth, cfg.model, cfg.simulation.shape);
}

Method parse_method(const std::string& name) {
  if (name == "atof") return Method::atof;
  if (name == "naive") return Method::naive;
  if (name == "average") return Method::average;
  fail(ErrorKind::invalid_argument, "unknown method: " + name);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::atof:
      return "atof";
    case Method::naive:
      return "naive";
    case Method::average:
      return "average";
  }
  return "unknown";
}

MethodResult run_method(Method m, const RunConfig& cfg, const FiringSchedule& sched,
                        const Trace& trace, std::span<const ScanRealization> scans) {
  MethodResult out;
  if (m == Method::average) {
    require(scans.size() == sched.scans(), ErrorKind::data,
            "average: the scan archive is missing or incomplete");
    out.spectrum = average_scans(scans);
    out.spectrum.schedule_hash = hash_schedule(sched);
    return out;
  }
  require(trace.length() == sched.trace_length(), ErrorKind::dimension,
          "trace length does not match the schedule");
  out.events = detect_events(trace.y, cfg.detection);
  if (m == Method::naive) {
    out.spectrum = naive_atof(out.events, sched);
    return out;
  }
  auto rec = reconstruct_events(out.events, sched, cfg.model, cfg.solver);
  out.spectrum = std::move(rec.spectrum);
  out.state = std::move(rec.state);
  return out;
}

Scores score_spectrum(const RunConfig& cfg, std::span<const double> truth,
                      std::span<const double> estimate) {
  require(truth.size() == estimate.size(), ErrorKind::dimension,
          "evaluate: truth and estimate have different lengths");
  const auto& e = cfg.evaluation;
  Scores s;
  const auto truth_events = detect_events(truth, e.truth_detection);
  const auto est_events = detect_events(estimate, e.spectrum_detection);
  s.events = match_events(truth_events, est_events);
  s.reported = est_events.events.size();
  s.peaks = match_peaks(pick_peaks(truth, e.min_height, e.calibration),
                        pick_peaks(estimate, e.min_height, e.calibration), e.k, e.delta_m);
  s.width_cdf = width_intensity_cdf(estimate, e.min_height);
  return s;
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "theta0") return SweepVariable::theta0;
  if (name == "hw") return SweepVariable::hw;
  if (name == "spectrum_hw") return SweepVariable::spectrum_hw;
  if (name == "iteration" || name == "iter") return SweepVariable::iteration;
  fail(ErrorKind::invalid_argument, "unknown sweep variable: " + name);
}

std::string sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::theta0:
      return "theta0";
    case SweepVariable::hw:
      return "hw";
    case SweepVariable::spectrum_hw:
      return "spectrum_hw";
    case SweepVariable::iteration:
      return "iteration";
  }
  return "unknown";
}

std::vector<CurvePoint> curve_sweep(const RunConfig& cfg, const Simulation& sim, Method m,
                                    SweepVariable var, std::span<const double> values) {
  require(values.size() >= 2, ErrorKind::invalid_argument, "sweep: need at least two values");
  const auto truth = truth_spectrum(cfg, sim.truth);

  if (var == SweepVariable::iteration) {
    require(m == Method::atof, ErrorKind::invalid_argument,
            "sweep: the iteration variable only applies to atof");
    double top = 0.0;
    for (double v : values) {
      require(v >= 1.0 && v == std::floor(v), ErrorKind::invalid_argument,
              "sweep: iterations must be positive integers");
      top = std::max(top, v);
    }
    RunConfig run = cfg;
    run.solver.max_iters = static_cast<std::size_t>(top);
    run.solver.tol = std::numeric_limits<double>::min();
    run.validate();
    const auto events = detect_events(sim.trace.y, run.detection);
    const auto ctx = events_to_context(events, sim.schedule);
    const double inv_scans = 1.0 / static_cast<double>(sim.schedule.scans());
    std::vector<std::optional<CurvePoint>> at(static_cast<std::size_t>(top) + 1);
    ista_solve(ctx, run.model, run.solver, [&](std::size_t k, std::span<const double> w) {
      if (std::find(values.begin(), values.end(), static_cast<double>(k)) == values.end()) return;
      auto x = assign_events(ctx, events, sim.schedule, w, run.solver.keep_unsupported);
      for (double& v : x) v *= inv_scans;
      at[k] = to_point(static_cast<double>(k), score_spectrum(run, truth, x));
    });
    std::vector<CurvePoint> curve;
    for (double v : values) {
      const auto& p = at[static_cast<std::size_t>(v)];
      // ISTA can stop early only through tol, which is disabled above.
      require(p.has_value(), ErrorKind::data, "sweep: iterate missing");
      curve.push_back(*p);
    }
    return curve;
  }

  std::vector<CurvePoint> curve(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        const auto run = with_value(cfg, var, values[i]);
        const auto res = run_method(m, run, sim.schedule, sim.trace, sim.scans);
        curve[i] = to_point(values[i], score_spectrum(run, truth, res.spectrum.x));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const std::size_t workers =
        std::clamp<std::size_t>(cfg.solver.threads, 1, values.size());
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return curve;
}

void write_curve(std::ostream& os, SweepVariable var, std::span<const CurvePoint> curve) {
  os << sweep_variable_name(var) << ",tpr,fdr,fnr,reported\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : curve)
    os << p.value << ',' << p.tpr << ',' << p.fdr << ',' << p.fnr << ',' << p.reported << '\n';
}

void cmd_simulate(const RunConfig& cfg) {
  const auto sim = simulate(cfg);
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  write_file(dir / kConfigFile, [&](std::ostream& os) { serialize_config(os, cfg); });
  write_file(dir / kTruthSpecFile, [&](std::ostream& os) { write_ground_truth(os, sim.truth); });
  const auto truth = truth_spectrum(cfg, sim.truth);
  write_file(dir / kTruthSpectrumFile,
             [&](std::ostream& os) {
               SpectrumEstimate x{truth, "truth", hash_schedule(sim.schedule), 0};
               write_spectrum(os, x, sim.schedule.scans());
             },
             true);
  write_file(dir / kScheduleFile, [&](std::ostream& os) { write_schedule(os, sim.schedule); });
  write_file(dir / kTraceFile, [&](std::ostream& os) { write_trace(os, sim.trace); }, true);
  if (cfg.simulation.save_scans) {
    write_file(dir / kScansFile, [&](std::ostream& os) { write_scans(os, sim.scans); }, true);
  } else {
    fs::remove(dir / kScansFile);
  }
  const auto stats = acquisition_stats(sim.schedule);
  write_file(dir / kAcquisitionFile, [&](std::ostream& os) {
    os << "acquisition_time,acceleration_factor\n"
       << stats.acquisition_time << ',' << std::setprecision(17) << stats.acceleration_factor
       << '\n';
  });
}

Simulation load_simulation(const fs::path& dir) {
  Simulation sim;
  read_file(dir / kTruthSpecFile, [&](std::istream& is) { sim.truth = read_ground_truth(is); });
  read_file(dir / kScheduleFile, [&](std::istream& is) { sim.schedule = read_schedule(is); });
  read_file(dir / kTraceFile, [&](std::istream& is) { sim.trace = read_trace(is); }, true);
  if (fs::exists(dir / kScansFile))
    read_file(dir / kScansFile, [&](std::istream& is) { sim.scans = read_scans(is); }, true);
  require(sim.trace.length() == sim.schedule.trace_length(), ErrorKind::data,
          "trace and schedule files disagree");
  return sim;
}

void cmd_reconstruct(const RunConfig& cfg, Method m) {
  cfg.validate();
  const fs::path dir = cfg.out_dir;
  const auto sim = load_simulation(dir);
  const auto res = run_method(m, cfg, sim.schedule, sim.trace, sim.scans);
  write_file(dir / spectrum_file(m),
             [&](std::ostream& os) { write_spectrum(os, res.spectrum, sim.schedule.scans()); },
             true);
  if (res.state)
    write_file(dir / "cost_history.csv",
               [&](std::ostream& os) { write_cost_history(os, *res.state); });
  if (m != Method::average)
    write_file(dir / "events.jsonl", [&](std::ostream& os) { write_events_jsonl(os, res.events); });
}

void cmd_evaluate(const RunConfig& cfg, const fs::path& truth, const fs::path& estimate) {
  cfg.validate();
  SpectrumEstimate t, e;
  read_file(truth, [&](std::istream& is) { t = read_spectrum(is); }, true);
  read_file(estimate, [&](std::istream& is) { e = read_spectrum(is); }, true);
  require(t.x.size() == e.x.size(), ErrorKind::data,
          "evaluate: truth and estimate are on different axes");
  const auto s = score_spectrum(cfg, t.x, e.x);
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  const std::string stem = estimate.stem().string();
  write_file(dir / ("metrics_" + stem + ".csv"), [&](std::ostream& os) {
    os << "level,tp,fp,fn,tpr,fdr,fnr\n" << std::setprecision(17);
    print_report_row(os, "event", s.events);
    print_report_row(os, "peak", s.peaks);
  });
  write_file(dir / ("width_cdf_" + stem + ".csv"), [&](std::ostream& os) {
    os << "ratio,fraction\n" << std::setprecision(17);
    for (const auto& [r, f] : s.width_cdf) os << r << ',' << f << '\n';
  });
  write_file(dir / ("matches_" + stem + ".jsonl"), [&](std::ostream& os) {
    write_matches(os, "event", s.events);
    write_matches(os, "peak", s.peaks);
  });
}

void cmd_sweep(const RunConfig& cfg, SweepVariable var, std::span<const double> values) {
  cfg.validate();
  const auto sim = simulate(cfg);
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  std::vector<Method> methods{Method::atof};
  if (var != SweepVariable::iteration) {
    methods.push_back(Method::naive);
    methods.push_back(Method::average);
  }
  for (Method m : methods) {
    const auto curve = curve_sweep(cfg, sim, m, var, values);
    write_file(dir / ("curves_" + method_name(m) + ".csv"),
               [&](std::ostream& os) { write_curve(os, var, curve); });
  }
}

}  // namespace atofms
