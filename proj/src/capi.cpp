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

#include "dcop/dcop.h"

#include <algorithm>
#include <thread>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "dcop/constraints.hpp"
#include "dcop/engine.hpp"
#include "dcop/error.hpp"
#include "dcop/harness.hpp"
#include "dcop/io.hpp"
#include "dcop/metrics.hpp"
#include "dcop/objectives.hpp"

struct dcop_schedule {
  std::shared_ptr<const dcop::ConstraintSchedule> schedule;
};

struct dcop_best_known {
  dcop::BestKnownTable table;
};

namespace {

thread_local std::string g_last_error;

dcop_status fail(dcop_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating library exceptions into status codes.
template <typename Body>
dcop_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    body();
    return DCOP_OK;
  } catch (const dcop::ContractViolation& e) {
    return fail(DCOP_ERR_CONTRACT, e.what());
  } catch (const dcop::ConfigError& e) {
    return fail(DCOP_ERR_CONFIG, e.what());
  } catch (const dcop::IoError& e) {
    return fail(DCOP_ERR_IO, e.what());
  } catch (const dcop::ReportError& e) {
    return fail(DCOP_ERR_REPORT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DCOP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DCOP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DCOP_ERR_INTERNAL, "unknown error");
  }
}


#define DCOP_REQUIRE(ptr)                                                     \
  do {                                                                        \
    if ((ptr) == nullptr) {                                                   \
      return fail(DCOP_ERR_INVALID_ARGUMENT, "argument '" #ptr "' is null"); \
    }                                                                         \
  } while (false)

dcop::RunOptions to_run_options(const dcop_run_options& o) {
  dcop::RunOptions r;
  r.handler.epsilon.theta_fraction = o.epsilon_theta;
  r.handler.epsilon.cp = o.epsilon_cp;
  r.handler.epsilon.tc_fraction = o.epsilon_tc;
  const std::string worst = o.worst_policy ? o.worst_policy : "objective";
  if (worst == "objective") {
    r.worst = dcop::WorstPolicy::kObjective;
  } else if (worst == "lexicographic") {
    r.worst = dcop::WorstPolicy::kLexicographic;
  } else {
    throw dcop::ConfigError("worst policy must be 'objective' or 'lexicographic'");
  }
  return r;
}

}  // namespace

extern "C" {

const char* dcop_version(void) { return "1.0.0"; }

const char* dcop_status_string(dcop_status status) {
  switch (status) {
    case DCOP_OK: return "ok";
    case DCOP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DCOP_ERR_CONFIG: return "configuration error";
    case DCOP_ERR_IO: return "i/o error";
    case DCOP_ERR_CONTRACT: return "contract violation";
    case DCOP_ERR_REPORT: return "report error";
    case DCOP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dcop_last_error(void) { return g_last_error.c_str(); }

dcop_status dcop_evaluate(const char* function, const double* x, size_t dimension,
                          double* value) {
  DCOP_REQUIRE(function);
  DCOP_REQUIRE(x);
  DCOP_REQUIRE(value);
  return guarded([&] {
    const dcop::ObjectiveFunction fn(dcop::parse_objective_kind(function), dimension);
    *value = fn.evaluate(std::span<const double>(x, dimension));
  });
}

void dcop_schedule_options_init(dcop_schedule_options* o) {
  if (o == nullptr) return;
  *o = dcop_schedule_options{};
  o->mode = "translate";
  o->severity = "medium";
  o->custom_severity = 0;
  o->lk = -15.0;
  o->uk = 15.0;
  o->b0 = 2.0;
  o->dimension = 30;
  o->lower = -5.0;
  o->upper = 5.0;
  o->tau = 1000;
  o->buffer = 1000;
  o->changes = 100;
  o->constraint_count = 1;
  o->rotation_probability = 0.5;
  o->swaps_per_rotation = 1;
  o->seed = 1;
}

dcop_status dcop_schedule_build(const dcop_schedule_options* options, dcop_schedule** out) {
  DCOP_REQUIRE(options);
  DCOP_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    dcop::ScheduleConfig c;
    c.dimension = options->dimension;
    c.bounds = {options->lower, options->upper};
    c.clock = {options->tau, options->buffer, options->changes};
    c.mode = dcop::parse_change_mode(options->mode ? options->mode : "translate");
    const std::string severity = options->severity ? options->severity : "medium";
    if (options->custom_severity) {
      c.severity = {severity, options->lk, options->uk, options->b0};
    } else {
      c.severity = dcop::SeverityProfile::preset(severity);
    }
    c.constraint_count = options->constraint_count;
    c.rotation_probability = options->rotation_probability;
    c.swaps_per_rotation = options->swaps_per_rotation;
    c.seed = options->seed;
    auto handle = std::make_unique<dcop_schedule>();
    handle->schedule = std::make_shared<const dcop::ConstraintSchedule>(dcop::build_schedule(c));
    *out = handle.release();
  });
}

dcop_status dcop_schedule_load(const char* path, dcop_schedule** out) {
  DCOP_REQUIRE(path);
  DCOP_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<dcop_schedule>();
    handle->schedule = std::make_shared<const dcop::ConstraintSchedule>(dcop::load_schedule(path));
    *out = handle.release();
  });
}

dcop_status dcop_schedule_save(const dcop_schedule* schedule, const char* path) {
  DCOP_REQUIRE(schedule);
  DCOP_REQUIRE(path);
  return guarded([&] { dcop::save_schedule(*schedule->schedule, path); });
}

void dcop_schedule_free(dcop_schedule* schedule) { delete schedule; }

dcop_status dcop_schedule_frame_count(const dcop_schedule* schedule, size_t* count) {
  DCOP_REQUIRE(schedule);
  DCOP_REQUIRE(count);
  *count = schedule->schedule->frame_count();
  return DCOP_OK;
}

dcop_status dcop_schedule_dimension(const dcop_schedule* schedule, size_t* dimension) {
  DCOP_REQUIRE(schedule);
  DCOP_REQUIRE(dimension);
  *dimension = schedule->schedule->dimension();
  return DCOP_OK;
}

dcop_status dcop_schedule_constraint_count(const dcop_schedule* schedule, size_t* m) {
  DCOP_REQUIRE(schedule);
  DCOP_REQUIRE(m);
  *m = schedule->schedule->config().constraint_count;
  return DCOP_OK;
}

dcop_status dcop_schedule_constraint(const dcop_schedule* schedule, size_t t, size_t k,
                                     double* a, double* b) {
  DCOP_REQUIRE(schedule);
  const dcop::ConstraintSchedule& s = *schedule->schedule;
  if (t >= s.frame_count() || k >= s.config().constraint_count) {
    return fail(DCOP_ERR_INVALID_ARGUMENT, "time or constraint index out of range");
  }
  const dcop::LinearConstraint& c = s.frame(t)[k];
  if (a != nullptr) std::copy(c.a.begin(), c.a.end(), a);
  if (b != nullptr) *b = c.b;
  return DCOP_OK;
}

dcop_status dcop_schedule_region_ratio(const dcop_schedule* schedule, size_t t,
                                       uint64_t samples, uint64_t seed, double* ratio) {
  DCOP_REQUIRE(schedule);
  DCOP_REQUIRE(ratio);
  return guarded([&] {
    const dcop::ConstraintSchedule& s = *schedule->schedule;
    dcop::Rng rng(seed);
    *ratio = dcop::feasible_region_ratio(s.frame(t), s.bounds(), s.dimension(), samples, rng);
  });
}

dcop_status dcop_best_known_compute(const dcop_schedule* schedule, const char* function,
                                    uint64_t evaluations_per_frame, uint64_t seed,
                                    size_t workers, dcop_best_known** out) {
  DCOP_REQUIRE(schedule);
  DCOP_REQUIRE(function);
  DCOP_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const dcop::ConstraintSchedule& s = *schedule->schedule;
    const dcop::ObjectiveFunction fn(dcop::parse_objective_kind(function), s.dimension());
    dcop::BestKnownOptions options;
    if (evaluations_per_frame != 0) options.evaluations_per_frame = evaluations_per_frame;
    options.workers = workers;
    auto handle = std::make_unique<dcop_best_known>();
    handle->table = dcop::best_known(s, fn, options, seed);
    *out = handle.release();
  });
}

dcop_status dcop_best_known_load(const char* path, dcop_best_known** out) {
  DCOP_REQUIRE(path);
  DCOP_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<dcop_best_known>();
    handle->table = dcop::load_best_known(path);
    *out = handle.release();
  });
}

dcop_status dcop_best_known_save(const dcop_best_known* table, const char* path) {
  DCOP_REQUIRE(table);
  DCOP_REQUIRE(path);
  return guarded([&] { dcop::save_best_known(table->table, path); });
}

void dcop_best_known_free(dcop_best_known* table) { delete table; }

dcop_status dcop_best_known_size(const dcop_best_known* table, size_t* count) {
  DCOP_REQUIRE(table);
  DCOP_REQUIRE(count);
  *count = table->table.entries.size();
  return DCOP_OK;
}

dcop_status dcop_best_known_entry(const dcop_best_known* table, size_t t, double* f,
                                  int* feasible) {
  DCOP_REQUIRE(table);
  if (t >= table->table.entries.size()) {
    return fail(DCOP_ERR_INVALID_ARGUMENT, "time index out of range");
  }
  return guarded([&] {
    const dcop::BestKnownEntry& e = table->table.at(t);
    if (f != nullptr) *f = e.f;
    if (feasible != nullptr) *feasible = e.feasible ? 1 : 0;
  });
}

void dcop_run_options_init(dcop_run_options* o) {
  if (o == nullptr) return;
  *o = dcop_run_options{};
  o->function = "sphere";
  o->handler = "feasibility";
  o->np = 20;
  o->cr = 0.2;
  o->f_low = 0.2;
  o->f_high = 0.8;
  o->worst_policy = "objective";
  o->epsilon_theta = 0.2;
  o->epsilon_cp = 5.0;
  o->epsilon_tc = 0.2;
}

dcop_status dcop_run(const dcop_schedule* schedule, const dcop_best_known* best_known,
                     const dcop_run_options* options, size_t runs, uint64_t seed,
                     const char* out_dir, double* m_off_e) {
  DCOP_REQUIRE(schedule);
  DCOP_REQUIRE(options);
  DCOP_REQUIRE(out_dir);
  return guarded([&] {
    if (runs == 0) throw dcop::ConfigError("run count must be positive");
    const dcop::ConstraintSchedule& s = *schedule->schedule;
    const dcop::ObjectiveKind kind =
        dcop::parse_objective_kind(options->function ? options->function : "sphere");
    const dcop::HandlerKind handler =
        dcop::parse_handler_kind(options->handler ? options->handler : "feasibility");
    const dcop::DEConfig de{options->np, options->cr, options->f_low, options->f_high};
    const dcop::RunOptions run_options = to_run_options(*options);
    const dcop::DcopInstance instance{dcop::ObjectiveFunction(kind, s.dimension()), schedule->schedule};
    const dcop::BestKnownTable* best = best_known ? &best_known->table : nullptr;
    for (size_t k = 0; k < runs; ++k) {
      dcop::RunRecord meta;
      meta.function = std::string(dcop::to_string(kind));
      meta.mode = std::string(dcop::to_string(s.config().mode));
      meta.severity = s.config().severity.name;
      meta.tau = s.clock().tau;
      meta.constraint_count = s.config().constraint_count;
      meta.run_index = k;
      meta.schedule_seed = s.config().seed;
      const std::uint64_t run_seed =
          dcop::derive_seed(seed, {dcop::to_string(handler), std::to_string(k)});
      const dcop::RunRecord record = dcop::run_and_record(instance, handler, de, run_options,
                                                          run_seed, best, meta, out_dir);
      if (m_off_e != nullptr) {
        m_off_e[k] = record.m_off_e ? *record.m_off_e : std::numeric_limits<double>::quiet_NaN();
      }
    }
  });
}

dcop_status dcop_matrix_job_count(const char* config_path, size_t* count) {
  DCOP_REQUIRE(config_path);
  DCOP_REQUIRE(count);
  return guarded([&] {
    *count = dcop::expand_matrix(dcop::load_experiment_config(config_path)).size();
  });
}

dcop_status dcop_matrix_execute(const char* config_path, const char* out_dir, size_t workers,
                                int force, size_t* failed) {
  DCOP_REQUIRE(config_path);
  return guarded([&] {
    dcop::ExperimentConfig config = dcop::load_experiment_config(config_path);
    if (out_dir != nullptr) config.output_dir = out_dir;
    const std::vector<dcop::Job> jobs = dcop::expand_matrix(config);
    const auto records = dcop::execute(config, jobs, {workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers,
                                   force != 0});
    if (failed != nullptr) {
      *failed = static_cast<size_t>(std::count_if(records.begin(), records.end(),
                                                  [](const auto& r) { return !r.ok; }));
    }
  });
}

dcop_status dcop_report(const char* in_dir, const char* metric, const char* stats) {
  DCOP_REQUIRE(in_dir);
  return guarded([&] {
    dcop::ReportOptions options;
    if (metric != nullptr) options.metric = metric;
    if (stats != nullptr) options.stats = stats;
    dcop::write_report(dcop::load_records(in_dir), in_dir, options);
  });
}

}  // extern "C"
