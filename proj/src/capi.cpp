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

#include "atof/atof.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "atof/bessel.hpp"
#include "atof/config.hpp"
#include "atof/error.hpp"
#include "atof/experiment.hpp"
#include "atof/model.hpp"
#include "atof/schedule.hpp"
#include "atof/selftest.hpp"

struct atof_config {
  atofms::RunConfig cfg;
};

struct atof_schedule {
  atofms::FiringSchedule sched;
};

namespace {

thread_local std::string g_last_error;

atof_status status_of(atofms::ErrorKind kind) {
  switch (kind) {
    case atofms::ErrorKind::invalid_argument:
      return ATOF_ERR_INVALID_ARGUMENT;
    case atofms::ErrorKind::domain:
      return ATOF_ERR_DOMAIN;
    case atofms::ErrorKind::dimension:
      return ATOF_ERR_DIMENSION;
    case atofms::ErrorKind::io:
      return ATOF_ERR_IO;
    case atofms::ErrorKind::data:
      return ATOF_ERR_DATA;
    case atofms::ErrorKind::config:
      return ATOF_ERR_CONFIG;
  }
  return ATOF_ERR_INTERNAL;
}

// Runs fn and converts any exception into a status plus a message.
template <typename F>
atof_status guarded(F&& fn) {
  g_last_error.clear();
  try {
    fn();
    return ATOF_OK;
  } catch (const atofms::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return ATOF_ERR_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ATOF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ATOF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ATOF_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  atofms::require(p != nullptr, atofms::ErrorKind::invalid_argument,
                std::string(what) + " must not be null");
}

void copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
}

}  // namespace

extern "C" {

const char* atof_version(void) { return "0.1.0"; }

const char* atof_status_string(atof_status status) {
  switch (status) {
    case ATOF_OK:
      return "ok";
    case ATOF_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case ATOF_ERR_DOMAIN:
      return "domain error";
    case ATOF_ERR_DIMENSION:
      return "dimension mismatch";
    case ATOF_ERR_IO:
      return "i/o error";
    case ATOF_ERR_DATA:
      return "data error";
    case ATOF_ERR_CONFIG:
      return "config error";
    case ATOF_ERR_SELFTEST:
      return "selftest failed";
    case ATOF_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* atof_last_error(void) { return g_last_error.c_str(); }

atof_status atof_config_create(atof_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new atof_config{};
  });
}

atof_status atof_config_parse(const char* text, atof_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new atof_config{atofms::parse_config_string(text)};
  });
}

atof_status atof_config_load(const char* path, atof_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    std::ifstream is(path);
    atofms::require(static_cast<bool>(is), atofms::ErrorKind::io,
                  std::string("cannot open config: ") + path);
    *out = new atof_config{atofms::parse_config(is)};
  });
}

void atof_config_destroy(atof_config* cfg) { delete cfg; }

atof_status atof_config_set(atof_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    atofms::set_config_value(cfg->cfg, key, value);
  });
}

atof_status atof_config_get(const atof_config* cfg, const char* key, char* buf, size_t cap,
                            size_t* needed) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    copy_out(atofms::get_config_value(cfg->cfg, key), buf, cap, needed);
  });
}

atof_status atof_config_validate(const atof_config* cfg) {
  return guarded([&] {
    need(cfg, "cfg");
    cfg->cfg.validate();
  });
}

atof_status atof_config_serialize(const atof_config* cfg, char* buf, size_t cap,
                                  size_t* needed) {
  return guarded([&] {
    need(cfg, "cfg");
    copy_out(atofms::serialize_config_string(cfg->cfg), buf, cap, needed);
  });
}

atof_status atof_simulate(const atof_config* cfg) {
  return guarded([&] {
    need(cfg, "cfg");
    atofms::cmd_simulate(cfg->cfg);
  });
}

atof_status atof_reconstruct(const atof_config* cfg, const char* method) {
  return guarded([&] {
    need(cfg, "cfg");
    need(method, "method");
    atofms::cmd_reconstruct(cfg->cfg, atofms::parse_method(method));
  });
}

atof_status atof_evaluate(const atof_config* cfg, const char* truth_path,
                          const char* estimate_path) {
  return guarded([&] {
    need(cfg, "cfg");
    need(truth_path, "truth_path");
    need(estimate_path, "estimate_path");
    atofms::cmd_evaluate(cfg->cfg, truth_path, estimate_path);
  });
}

atof_status atof_sweep(const atof_config* cfg, const char* variable, const double* values,
                       size_t count) {
  return guarded([&] {
    need(cfg, "cfg");
    need(variable, "variable");
    need(values, "values");
    atofms::cmd_sweep(cfg->cfg, atofms::parse_sweep_variable(variable), {values, count});
  });
}

atof_status atof_selftest(char* buf, size_t cap, size_t* needed) {
  bool ok = false;
  const auto status = guarded([&] {
    const auto results = atofms::run_selftest();
    copy_out(atofms::format_selftest(results), buf, cap, needed);
    ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  });
  if (status != ATOF_OK) return status;
  if (!ok) {
    g_last_error = "one or more selftest suites failed";
    return ATOF_ERR_SELFTEST;
  }
  return ATOF_OK;
}

atof_status atof_schedule_generate(size_t n, size_t scans, size_t dtau_min, size_t dtau_max,
                                   uint64_t seed, atof_schedule** out) {
  return guarded([&] {
    need(out, "out");
    *out = new atof_schedule{atofms::generate_schedule(n, scans, dtau_min, dtau_max, seed)};
  });
}

atof_status atof_schedule_create(size_t n, const size_t* tau, size_t scans,
                                 atof_schedule** out) {
  return guarded([&] {
    need(tau, "tau");
    need(out, "out");
    *out = new atof_schedule{atofms::FiringSchedule(n, std::vector<size_t>(tau, tau + scans))};
  });
}

void atof_schedule_destroy(atof_schedule* sched) { delete sched; }

size_t atof_schedule_trace_length(const atof_schedule* sched) {
  return sched ? sched->sched.trace_length() : 0;
}

atof_status atof_schedule_neighbors(const atof_schedule* sched, size_t t, size_t* bins,
                                    size_t cap, size_t* count) {
  return guarded([&] {
    need(sched, "sched");
    need(count, "count");
    atofms::require(t < sched->sched.trace_length(), atofms::ErrorKind::domain,
                  "sample index outside the trace");
    const auto nb = sched->sched.sample_neighbors(t);
    *count = nb.size();
    if (bins) std::copy_n(nb.begin(), std::min(cap, nb.size()), bins);
  });
}

atof_status atof_bessel_i_scaled(int order, double x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = atofms::bessel_i_scaled(order, x);
  });
}

atof_status atof_event_density(double z, double s, double mu, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = atofms::event_density(z, s, atofms::ModelParams{mu, 1e-4, 0.0});
  });
}

double atof_get_bessel_crossover(void) { return atofms::bessel_crossover(); }

atof_status atof_set_bessel_crossover(double x) {
  return guarded([&] { atofms::set_bessel_crossover(x); });
}

}  // extern "C"
