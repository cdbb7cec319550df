// Copyright 2026 The dcopbench Authors
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

/*
 * C interface of the dcopbench library.
 *
 * Every function returns a dcop_status. On failure the thread-local message
 * returned by dcop_last_error() describes the problem. Handles are opaque and
 * must be released with their matching *_free function; freeing NULL is a
 * no-op.
 */
#ifndef DCOP_DCOP_H_
#define DCOP_DCOP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DCOP_BUILDING_LIBRARY)
#    define DCOP_API __declspec(dllexport)
#  else
#    define DCOP_API __declspec(dllimport)
#  endif
#else
#  define DCOP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcop_status {
  DCOP_OK = 0,
  DCOP_ERR_INVALID_ARGUMENT = 1, /* null pointer or out-of-range index */
  DCOP_ERR_CONFIG = 2,           /* invalid configuration values */
  DCOP_ERR_IO = 3,               /* file missing, unreadable or malformed */
  DCOP_ERR_CONTRACT = 4,         /* precondition violated (e.g. dimension) */
  DCOP_ERR_REPORT = 5,           /* metrics could not be computed */
  DCOP_ERR_INTERNAL = 6
} dcop_status;

typedef struct dcop_schedule dcop_schedule;
typedef struct dcop_best_known dcop_best_known;

DCOP_API const char* dcop_version(void);
DCOP_API const char* dcop_status_string(dcop_status status);
/* Message of the most recent failure on the calling thread ("" if none). */
DCOP_API const char* dcop_last_error(void);

/* ---- objectives ---- */

/* function: "sphere" | "rastrigin" | "ackley" | "rosenbrock". */
DCOP_API dcop_status dcop_evaluate(const char* function, const double* x, size_t dimension,
                                   double* value);

/* ---- schedules ---- */

typedef struct dcop_schedule_options {
  const char* mode;          /* "translate" | "combined" | "multi" */
  const char* severity;      /* preset name, or the label of a custom profile */
  int custom_severity;       /* nonzero: use lk, uk, b0 with severity as the label */
  double lk, uk, b0;
  size_t dimension;
  double lower, upper;
  int64_t tau, buffer, changes;
  size_t constraint_count;   /* m; must be 1 unless mode is "multi" */
  double rotation_probability;
  size_t swaps_per_rotation;
  uint64_t seed;
} dcop_schedule_options;

/* Defaults: translate, medium, D = 30, [-5, 5], tau = 1000, buffer = 1000,
 * 100 changes, m = 1, p_rot = 0.5, one swap, seed 1. */
DCOP_API void dcop_schedule_options_init(dcop_schedule_options* options);

DCOP_API dcop_status dcop_schedule_build(const dcop_schedule_options* options,
                                         dcop_schedule** out);
DCOP_API dcop_status dcop_schedule_load(const char* path, dcop_schedule** out);
DCOP_API dcop_status dcop_schedule_save(const dcop_schedule* schedule, const char* path);
DCOP_API void dcop_schedule_free(dcop_schedule* schedule);

DCOP_API dcop_status dcop_schedule_frame_count(const dcop_schedule* schedule, size_t* count);
DCOP_API dcop_status dcop_schedule_dimension(const dcop_schedule* schedule, size_t* dimension);
DCOP_API dcop_status dcop_schedule_constraint_count(const dcop_schedule* schedule, size_t* m);
/* Copies coefficient vector `a` (length = dimension) and offset b of
 * constraint k at time t. `a` may be NULL when only b is wanted. */
DCOP_API dcop_status dcop_schedule_constraint(const dcop_schedule* schedule, size_t t, size_t k,
                                              double* a, double* b);
/* Monte Carlo feasible share of the box at time t. */
DCOP_API dcop_status dcop_schedule_region_ratio(const dcop_schedule* schedule, size_t t,
                                                uint64_t samples, uint64_t seed, double* ratio);

/* ---- best-known tables ---- */

/* evaluations_per_frame = 0 selects the default (200000). workers = 0 uses
 * the hardware concurrency. */
DCOP_API dcop_status dcop_best_known_compute(const dcop_schedule* schedule, const char* function,
                                             uint64_t evaluations_per_frame, uint64_t seed,
                                             size_t workers, dcop_best_known** out);
DCOP_API dcop_status dcop_best_known_load(const char* path, dcop_best_known** out);
DCOP_API dcop_status dcop_best_known_save(const dcop_best_known* table, const char* path);
DCOP_API void dcop_best_known_free(dcop_best_known* table);
DCOP_API dcop_status dcop_best_known_size(const dcop_best_known* table, size_t* count);
DCOP_API dcop_status dcop_best_known_entry(const dcop_best_known* table, size_t t, double* f,
                                           int* feasible);

/* ---- runs ---- */

typedef struct dcop_run_options {
  const char* function;      /* default "sphere" */
  const char* handler;       /* "feasibility" | "penalty" | "epsilon" */
  size_t np;
  double cr, f_low, f_high;
  const char* worst_policy;  /* "objective" | "lexicographic" */
  double epsilon_theta, epsilon_cp, epsilon_tc;
} dcop_run_options;

/* Defaults: sphere, feasibility, NP = 20, CR = 0.2, F in [0.2, 0.8], worst by
 * objective, epsilon theta 0.2 / cp 5 / Tc 0.2 of a period. */
DCOP_API void dcop_run_options_init(dcop_run_options* options);

/* Runs `runs` independent runs on one schedule. Run k uses a seed derived
 * from (seed, handler, k) and writes trace_<handler>_run<k>.csv and
 * record_<handler>_run<k>.json into out_dir. best_known may be NULL; then no
 * M_off_e is recorded. When m_off_e is non-NULL it receives `runs` values
 * (NaN without a best-known table). */
DCOP_API dcop_status dcop_run(const dcop_schedule* schedule, const dcop_best_known* best_known,
                              const dcop_run_options* options, size_t runs, uint64_t seed,
                              const char* out_dir, double* m_off_e);

/* ---- experiments ---- */

/* Expands the JSON experiment config into jobs and reports how many. */
DCOP_API dcop_status dcop_matrix_job_count(const char* config_path, size_t* count);

/* Runs the whole matrix into out_dir (overrides the config's "output"),
 * then writes the report files there. failed receives the number of failed
 * jobs when non-NULL. */
DCOP_API dcop_status dcop_matrix_execute(const char* config_path, const char* out_dir,
                                         size_t workers, int force, size_t* failed);

/* Rebuilds summary.csv, ranking.csv, stats.csv and series.csv in in_dir from
 * the run records below it. metric: "moffe"; stats: "kw" or "none". */
DCOP_API dcop_status dcop_report(const char* in_dir, const char* metric, const char* stats);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* DCOP_DCOP_H_ */
