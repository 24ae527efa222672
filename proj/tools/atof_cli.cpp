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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atof/atof.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSelftest = 3;

int exit_code(atof_status s) {
  switch (s) {
    case ATOF_OK:
      return 0;
    case ATOF_ERR_INVALID_ARGUMENT:
    case ATOF_ERR_CONFIG:
      return kExitUsage;
    case ATOF_ERR_SELFTEST:
      return kExitSelftest;
    default:
      return kExitData;
  }
}

int report(atof_status s) {
  if (s != ATOF_OK) std::fprintf(stderr, "error: %s: %s\n", atof_status_string(s), atof_last_error());
  return exit_code(s);
}

using ConfigPtr = std::unique_ptr<atof_config, decltype(&atof_config_destroy)>;

struct Common {
  std::string config;
  std::string seed;
  std::string out;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "config file (key = value with [sections])");
  cmd->add_option("--seed", c.seed, "root seed, overrides run.seed");
  cmd->add_option("--out", c.out, "output directory, overrides run.out_dir");
  cmd->add_option("--set", c.sets, "override one field, e.g. solver.theta0=1e-3");
}

// Builds the config handle; returns a status and leaves cfg empty on failure.
atof_status load_config(const Common& c, ConfigPtr& cfg) {
  atof_config* raw = nullptr;
  atof_status s = c.config.empty() ? atof_config_create(&raw)
                                   : atof_config_load(c.config.c_str(), &raw);
  if (s != ATOF_OK) return s;
  cfg.reset(raw);
  if (!c.seed.empty() && (s = atof_config_set(raw, "run.seed", c.seed.c_str())) != ATOF_OK)
    return s;
  if (!c.out.empty() && (s = atof_config_set(raw, "run.out_dir", c.out.c_str())) != ATOF_OK)
    return s;
  for (const auto& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return ATOF_ERR_INVALID_ARGUMENT;
    }
    s = atof_config_set(raw, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (s != ATOF_OK) return s;
  }
  return atof_config_validate(raw);
}

bool parse_values(const std::string& csv, std::vector<double>& out) {
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') return false;
    out.push_back(v);
  }
  return !out.empty();
}

std::string config_out_dir(const atof_config* cfg) {
  size_t needed = 0;
  atof_config_get(cfg, "run.out_dir", nullptr, 0, &needed);
  std::string text(needed, '\0');
  atof_config_get(cfg, "run.out_dir", text.data(), text.size(), &needed);
  text.resize(needed > 0 ? needed - 1 : 0);
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accelerated time-of-flight reconstruction toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(atof_version()));

  Common sim_opts, rec_opts, eval_opts, sweep_opts;
  std::string method;
  std::string truth, estimate;
  std::string sweep_var, sweep_values;

  auto* sim = app.add_subcommand("simulate", "write a seeded synthetic acquisition");
  add_common(sim, sim_opts);

  auto* rec = app.add_subcommand("reconstruct", "estimate the spectrum from a simulated run");
  add_common(rec, rec_opts);
  rec->add_option("--method", method, "atof, naive or average")->required();

  auto* ev = app.add_subcommand("evaluate", "score an estimate against the truth spectrum");
  add_common(ev, eval_opts);
  ev->add_option("--truth", truth, "truth spectrum (default <out>/truth.spc)");
  ev->add_option("--estimate", estimate, "estimate (default <out>/spectrum_atof.spc)");

  auto* sw = app.add_subcommand("sweep", "TPR/FDR curves over one parameter");
  add_common(sw, sweep_opts);
  sw->add_option("--sweep", sweep_var, "theta0, hw, spectrum_hw or iteration")->required();
  sw->add_option("--values", sweep_values, "comma-separated values")->required();

  auto* st = app.add_subcommand("selftest", "run the built-in numerical checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  ConfigPtr cfg(nullptr, &atof_config_destroy);
  if (*st) {
    size_t needed = 0;
    atof_selftest(nullptr, 0, &needed);
    std::string text(needed, '\0');
    const atof_status s = atof_selftest(text.data(), text.size(), &needed);
    std::fputs(text.c_str(), stdout);
    return report(s);
  }
  if (*sim) {
    atof_status s = load_config(sim_opts, cfg);
    if (s == ATOF_OK) s = atof_simulate(cfg.get());
    return report(s);
  }
  if (*rec) {
    atof_status s = load_config(rec_opts, cfg);
    if (s == ATOF_OK) s = atof_reconstruct(cfg.get(), method.c_str());
    return report(s);
  }
  if (*ev) {
    atof_status s = load_config(eval_opts, cfg);
    if (s != ATOF_OK) return report(s);
    const std::string dir = config_out_dir(cfg.get());
    if (truth.empty()) truth = dir + "/truth.spc";
    if (estimate.empty()) estimate = dir + "/spectrum_atof.spc";
    return report(atof_evaluate(cfg.get(), truth.c_str(), estimate.c_str()));
  }
  if (*sw) {
    std::vector<double> values;
    if (!parse_values(sweep_values, values)) {
      std::fprintf(stderr, "error: --values expects comma-separated numbers\n");
      return kExitUsage;
    }
    atof_status s = load_config(sweep_opts, cfg);
    if (s == ATOF_OK) s = atof_sweep(cfg.get(), sweep_var.c_str(), values.data(), values.size());
    return report(s);
  }
  return kExitUsage;
}
