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

// dcop: command-line front end over the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcop/dcop.h"

namespace {

// Thrown with the failing call's message; main() turns it into the exit code.
struct Failure {
  int code;
  std::string message;
};

void check(dcop_status status, const char* what) {
  if (status != DCOP_OK) {
    throw Failure{static_cast<int>(status),
                  std::string(what) + ": " + dcop_status_string(status) + ": " + dcop_last_error()};
  }
}

struct ScheduleDeleter {
  void operator()(dcop_schedule* s) const { dcop_schedule_free(s); }
};
struct BestKnownDeleter {
  void operator()(dcop_best_known* b) const { dcop_best_known_free(b); }
};
using SchedulePtr = std::unique_ptr<dcop_schedule, ScheduleDeleter>;
using BestKnownPtr = std::unique_ptr<dcop_best_known, BestKnownDeleter>;

SchedulePtr load_schedule(const std::string& path) {
  dcop_schedule* raw = nullptr;
  check(dcop_schedule_load(path.c_str(), &raw), "loading schedule");
  return SchedulePtr(raw);
}

struct GenScheduleArgs {
  std::string mode = "translate";
  std::string severity = "medium";
  double lk = 0, uk = 0, b0 = 0;
  bool custom = false;
  size_t dimension = 30;
  double lower = -5, upper = 5;
  int64_t tau = 1000, buffer = 1000, changes = 100;
  size_t constraints = 0;
  double rotation_probability = 0.5;
  size_t swaps = 1;
  uint64_t seed = 1;
  std::string out;
};

int gen_schedule(const GenScheduleArgs& a) {
  dcop_schedule_options o;
  dcop_schedule_options_init(&o);
  o.mode = a.mode.c_str();
  o.severity = a.severity.c_str();
  if (a.custom) {
    o.custom_severity = 1;
    o.lk = a.lk;
    o.uk = a.uk;
    o.b0 = a.b0;
  }
  o.dimension = a.dimension;
  o.lower = a.lower;
  o.upper = a.upper;
  o.tau = a.tau;
  o.buffer = a.buffer;
  o.changes = a.changes;
  if (a.constraints != 0) {
    o.constraint_count = a.constraints;
  } else if (a.mode == "multi" || a.mode == "multi-translate") {
    o.constraint_count = 3;
  }
  o.rotation_probability = a.rotation_probability;
  o.swaps_per_rotation = a.swaps;
  o.seed = a.seed;

  dcop_schedule* raw = nullptr;
  check(dcop_schedule_build(&o, &raw), "building schedule");
  SchedulePtr schedule(raw);
  check(dcop_schedule_save(schedule.get(), a.out.c_str()), "writing schedule");
  size_t frames = 0;
  check(dcop_schedule_frame_count(schedule.get(), &frames), "counting frames");
  std::cout << "wrote " << a.out << " (" << frames << " frames)\n";
  return 0;
}

struct BestKnownArgs {
  std::string schedule;
  std::string function = "sphere";
  uint64_t evals = 200000;
  uint64_t seed = 1;
  size_t workers = 0;
  std::string out;
};

int best_known(const BestKnownArgs& a) {
  SchedulePtr schedule = load_schedule(a.schedule);
  dcop_best_known* raw = nullptr;
  check(dcop_best_known_compute(schedule.get(), a.function.c_str(), a.evals, a.seed, a.workers,
                                &raw),
        "computing best-known values");
  BestKnownPtr table(raw);
  check(dcop_best_known_save(table.get(), a.out.c_str()), "writing best-known table");
  size_t n = 0;
  check(dcop_best_known_size(table.get(), &n), "reading table size");
  std::cout << "wrote " << a.out << " (" << n << " entries)\n";
  return 0;
}

struct RunArgs {
  std::string schedule;
  std::string best_known;
  std::string function = "sphere";
  std::string handler = "feasibility";
  std::string worst = "objective";
  size_t runs = 1;
  uint64_t seed = 1;
  std::string out;
};

int run(const RunArgs& a) {
  SchedulePtr schedule = load_schedule(a.schedule);
  BestKnownPtr table;
  if (!a.best_known.empty()) {
    dcop_best_known* raw = nullptr;
    check(dcop_best_known_load(a.best_known.c_str(), &raw), "loading best-known table");
    table.reset(raw);
  }
  dcop_run_options o;
  dcop_run_options_init(&o);
  o.function = a.function.c_str();
  o.handler = a.handler.c_str();
  o.worst_policy = a.worst.c_str();

  std::vector<double> errors(a.runs);
  check(dcop_run(schedule.get(), table.get(), &o, a.runs, a.seed, a.out.c_str(), errors.data()),
        "running");
  double sum = 0;
  for (size_t k = 0; k < a.runs; ++k) {
    if (table) {
      std::printf("run %zu M_off_e %.6g\n", k, errors[k]);
      sum += errors[k];
    }
  }
  if (table && a.runs > 0) {
    std::printf("mean M_off_e %.6g\n", sum / static_cast<double>(a.runs));
  } else if (!table) {
    std::printf("%zu run(s) written to %s (no best-known table, error not computed)\n", a.runs,
                a.out.c_str());
  }
  return 0;
}

struct RegionArgs {
  std::string schedule;
  uint64_t samples = 1000000;
  uint64_t seed = 1;
  std::string out;
};

int region(const RegionArgs& a) {
  SchedulePtr schedule = load_schedule(a.schedule);
  size_t frames = 0, m = 0;
  check(dcop_schedule_frame_count(schedule.get(), &frames), "counting frames");
  check(dcop_schedule_constraint_count(schedule.get(), &m), "counting constraints");

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw Failure{DCOP_ERR_IO, "cannot open " + a.out};
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  os << "time";
  for (size_t k = 0; k < m; ++k) os << ",b" << k;
  os << ",ratio\n";
  char buf[64];
  for (size_t t = 0; t < frames; ++t) {
    os << t;
    for (size_t k = 0; k < m; ++k) {
      double b = 0;
      check(dcop_schedule_constraint(schedule.get(), t, k, nullptr, &b), "reading constraint");
      std::snprintf(buf, sizeof buf, "%.17g", b);
      os << ',' << buf;
    }
    double ratio = 0;
    check(dcop_schedule_region_ratio(schedule.get(), t, a.samples, a.seed, &ratio),
          "estimating region");
    std::snprintf(buf, sizeof buf, "%.6f", ratio);
    os << ',' << buf << '\n';
  }
  return 0;
}

struct MatrixArgs {
  std::string config;
  std::string out;
  size_t workers = 1;
  bool force = false;
  bool dry_run = false;
};

int matrix(const MatrixArgs& a) {
  size_t jobs = 0;
  check(dcop_matrix_job_count(a.config.c_str(), &jobs), "reading config");
  std::cout << jobs << " jobs\n";
  if (a.dry_run) return 0;
  size_t failed = 0;
  check(dcop_matrix_execute(a.config.c_str(), a.out.empty() ? nullptr : a.out.c_str(), a.workers,
                            a.force ? 1 : 0, &failed),
        "executing matrix");
  if (failed > 0) {
    std::cerr << "dcop: " << failed << " of " << jobs << " jobs failed (see records)\n";
    return 1;
  }
  std::cout << "done\n";
  return 0;
}

struct ReportArgs {
  std::string in;
  std::string metric = "moffe";
  std::string stats = "kw";
};

int report(const ReportArgs& a) {
  check(dcop_report(a.in.c_str(), a.metric.c_str(), a.stats.c_str()), "writing report");
  std::cout << "report written to " << a.in << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic constrained optimization benchmark"};
  app.set_version_flag("--version", std::string(dcop_version()));
  app.require_subcommand(1);

  GenScheduleArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-schedule", "Generate a constraint schedule");
  gen_cmd->add_option("--mode", gen.mode, "translate | combined | multi")->capture_default_str();
  gen_cmd->add_option("--severity", gen.severity, "small | medium | large, or a custom label")
      ->capture_default_str();
  auto* lk = gen_cmd->add_option("--lk", gen.lk, "custom lower translation step");
  auto* uk = gen_cmd->add_option("--uk", gen.uk, "custom upper translation step");
  auto* b0 = gen_cmd->add_option("--b0", gen.b0, "custom initial offset");
  lk->needs(uk, b0);
  uk->needs(lk, b0);
  b0->needs(lk, uk);
  gen_cmd->add_option("--dimension", gen.dimension)->capture_default_str();
  gen_cmd->add_option("--lower", gen.lower)->capture_default_str();
  gen_cmd->add_option("--upper", gen.upper)->capture_default_str();
  gen_cmd->add_option("--tau", gen.tau)->capture_default_str();
  gen_cmd->add_option("--buffer", gen.buffer)->capture_default_str();
  gen_cmd->add_option("--changes", gen.changes)->capture_default_str();
  gen_cmd->add_option("--constraints", gen.constraints, "m (default 1, or 3 in multi mode)");
  gen_cmd->add_option("--rotation-probability", gen.rotation_probability)->capture_default_str();
  gen_cmd->add_option("--swaps", gen.swaps)->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output JSON file")->required();

  BestKnownArgs bk;
  auto* bk_cmd = app.add_subcommand("best-known", "Approximate the optimum of every frame");
  bk_cmd->add_option("--schedule", bk.schedule)->required()->check(CLI::ExistingFile);
  bk_cmd->add_option("--function", bk.function)->capture_default_str();
  bk_cmd->add_option("--evals", bk.evals, "evaluations per frame")->capture_default_str();
  bk_cmd->add_option("--seed", bk.seed)->capture_default_str();
  bk_cmd->add_option("--workers", bk.workers, "0 = all cores")->capture_default_str();
  bk_cmd->add_option("--out", bk.out)->required();

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Run one handler on a schedule");
  run_cmd->add_option("--schedule", ra.schedule)->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--best-known", ra.best_known, "table used for M_off_e")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--function", ra.function)->capture_default_str();
  run_cmd->add_option("--handler", ra.handler, "feasibility | penalty | epsilon")
      ->capture_default_str();
  run_cmd->add_option("--worst", ra.worst, "objective | lexicographic")->capture_default_str();
  run_cmd->add_option("--runs", ra.runs)->capture_default_str();
  run_cmd->add_option("--seed", ra.seed)->capture_default_str();
  run_cmd->add_option("--out", ra.out)->required();

  RegionArgs rg;
  auto* region_cmd = app.add_subcommand("region", "Feasible share of the box per frame (CSV)");
  region_cmd->add_option("--schedule", rg.schedule)->required()->check(CLI::ExistingFile);
  region_cmd->add_option("--samples", rg.samples)->capture_default_str();
  region_cmd->add_option("--seed", rg.seed)->capture_default_str();
  region_cmd->add_option("--out", rg.out, "CSV file (stdout if omitted)");

  MatrixArgs mx;
  auto* matrix_cmd = app.add_subcommand("matrix", "Run an experiment matrix and report");
  matrix_cmd->add_option("--config", mx.config)->required()->check(CLI::ExistingFile);
  matrix_cmd->add_option("--out", mx.out, "output directory (overrides config)");
  matrix_cmd->add_option("--workers", mx.workers, "0 = all cores")->capture_default_str();
  matrix_cmd->add_flag("--force", mx.force, "recompute existing results");
  matrix_cmd->add_flag("--dry-run", mx.dry_run, "only count jobs");

  ReportArgs rp;
  auto* report_cmd = app.add_subcommand("report", "Aggregate run records into CSV reports");
  report_cmd->add_option("--in", rp.in)->required()->check(CLI::ExistingDirectory);
  report_cmd->add_option("--metric", rp.metric)->capture_default_str();
  report_cmd->add_option("--stats", rp.stats, "kw | none")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  // Custom severity is on when any of its three values was given.
  gen.custom = lk->count() > 0;

  try {
    if (*gen_cmd) return gen_schedule(gen);
    if (*bk_cmd) return best_known(bk);
    if (*run_cmd) return run(ra);
    if (*region_cmd) return region(rg);
    if (*matrix_cmd) return matrix(mx);
    if (*report_cmd) return report(rp);
  } catch (const Failure& f) {
    std::cerr << "dcop: " << f.message << '\n';
    return f.code == 0 ? 1 : f.code;
  } catch (const std::exception& e) {
    std::cerr << "dcop: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
