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

#ifndef ATOF_ATOF_H_
#define ATOF_ATOF_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ATOF_BUILDING_LIBRARY)
#    define ATOF_API __declspec(dllexport)
#  else
#    define ATOF_API __declspec(dllimport)
#  endif
#else
#  define ATOF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum atof_status {
  ATOF_OK = 0,
  ATOF_ERR_INVALID_ARGUMENT = 1,
  ATOF_ERR_DOMAIN = 2,
  ATOF_ERR_DIMENSION = 3,
  ATOF_ERR_IO = 4,
  ATOF_ERR_DATA = 5,
  ATOF_ERR_CONFIG = 6,
  ATOF_ERR_SELFTEST = 7,
  ATOF_ERR_INTERNAL = 8
} atof_status;

typedef struct atof_config atof_config;
typedef struct atof_schedule atof_schedule;

ATOF_API const char* atof_version(void);
ATOF_API const char* atof_status_string(atof_status status);

/* Message of the last failed call on this thread; empty after a success. */
ATOF_API const char* atof_last_error(void);

/* Configuration. Handles are owned by the caller and released with destroy. */
ATOF_API atof_status atof_config_create(atof_config** out);
ATOF_API atof_status atof_config_parse(const char* text, atof_config** out);
ATOF_API atof_status atof_config_load(const char* path, atof_config** out);
ATOF_API void atof_config_destroy(atof_config* cfg);
/* key is "section.name", e.g. "solver.theta0". */
ATOF_API atof_status atof_config_set(atof_config* cfg, const char* key, const char* value);
/* Current value of one field as text, copied like atof_config_serialize. */
ATOF_API atof_status atof_config_get(const atof_config* cfg, const char* key, char* buf,
                                     size_t cap, size_t* needed);
ATOF_API atof_status atof_config_validate(const atof_config* cfg);
/* Writes up to cap bytes including the terminator; *needed gets the full size. */
ATOF_API atof_status atof_config_serialize(const atof_config* cfg, char* buf, size_t cap,
                                           size_t* needed);

/* Commands. Outputs go to the configured run.out_dir. */
ATOF_API atof_status atof_simulate(const atof_config* cfg);
/* method: "atof", "naive" or "average". */
ATOF_API atof_status atof_reconstruct(const atof_config* cfg, const char* method);
ATOF_API atof_status atof_evaluate(const atof_config* cfg, const char* truth_path,
                                   const char* estimate_path);
/* variable: "theta0", "hw", "spectrum_hw" or "iteration". */
ATOF_API atof_status atof_sweep(const atof_config* cfg, const char* variable,
                                const double* values, size_t count);
/* Runs the built-in suites. The report goes to buf like atof_config_serialize.
   Returns ATOF_ERR_SELFTEST if any suite fails. */
ATOF_API atof_status atof_selftest(char* buf, size_t cap, size_t* needed);

/* Schedules. */
ATOF_API atof_status atof_schedule_generate(size_t n, size_t scans, size_t dtau_min,
                                            size_t dtau_max, uint64_t seed,
                                            atof_schedule** out);
ATOF_API atof_status atof_schedule_create(size_t n, const size_t* tau, size_t scans,
                                          atof_schedule** out);
ATOF_API void atof_schedule_destroy(atof_schedule* sched);
ATOF_API size_t atof_schedule_trace_length(const atof_schedule* sched);
/* Bins adjacent to sample t, ascending. *count gets the full size. */
ATOF_API atof_status atof_schedule_neighbors(const atof_schedule* sched, size_t t, size_t* bins,
                                             size_t cap, size_t* count);

/* Numerics. */
ATOF_API atof_status atof_bessel_i_scaled(int order, double x, double* out);
ATOF_API atof_status atof_event_density(double z, double s, double mu, double* out);
ATOF_API double atof_get_bessel_crossover(void);
ATOF_API atof_status atof_set_bessel_crossover(double x);

#ifdef __cplusplus
}
#endif

#endif  // ATOF_ATOF_H_
