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

#ifndef DCOP_HARNESS_HPP_
#define DCOP_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcop/constraints.hpp"
#include "dcop/engine.hpp"
#include "dcop/handlers.hpp"
#include "dcop/metrics.hpp"
#include "dcop/objectives.hpp"

namespace dcop {

// One environment setting of the experiment grid.
struct Setting {
  ChangeMode mode = ChangeMode::kTranslate;
  SeverityProfile severity;
  std::int64_t tau = 1000;
};

// The six single-constraint settings: small/medium/large translation at
// tau = 1000, medium translation at tau = 2000 and 500, and medium
// translation combined with rotation at tau = 1000.
std::vector<Setting> standard_settings(ChangeMode translation_mode = ChangeMode::kTranslate);

struct ExperimentConfig {
  std::vector<ObjectiveKind> functions{ObjectiveKind::kSphere};
  std::vector<Setting> settings;
  std::vector<HandlerKind> handlers{HandlerKind::kFeasibility, HandlerKind::kPenalty,
                                    HandlerKind::kEpsilon};
  std::size_t runs = 30;
  std::size_t dimension = 30;
  BoxBounds bounds;
  std::int64_t buffer = 1000;
  std::int64_t changes = 100;
  // Constraint count used by the multi mode; other modes use one.
  std::size_t multi_constraints = 3;
  double rotation_probability = 0.5;
  std::size_t swaps_per_rotation = 1;
  DEConfig de;
  RunOptions run_options;
  BestKnownOptions best_known;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "results";

  void validate() const;
};

// Parses the JSON experiment file. Either "settings" (a list of
// {mode, severity, tau} or the string "standard") or the Cartesian product of
// "modes" x "severities" x "taus" defines the grid.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct Job {
  ObjectiveKind function = ObjectiveKind::kSphere;
  Setting setting;
  HandlerKind handler = HandlerKind::kFeasibility;
  std::size_t run_index = 0;
  std::uint64_t schedule_seed = 0;
  std::uint64_t run_seed = 0;
  std::uint64_t best_known_seed = 0;

  // Directory shared by every job at the same coordinates.
  std::string directory() const;
};

// Schedule seed hashes (base seed, function, mode, severity, tau, run index);
// the run seed additionally hashes the handler.
std::uint64_t schedule_seed_for(std::uint64_t base_seed, ObjectiveKind function,
                                const Setting& setting, std::size_t run_index);
std::uint64_t run_seed_for(std::uint64_t schedule_seed, HandlerKind handler);

// Functions x settings x handlers x runs. Throws ConfigError on an empty axis.
std::vector<Job> expand_matrix(const ExperimentConfig& config);

ScheduleConfig schedule_config_for(const ExperimentConfig& config, const Job& job);

struct RunRecord {
  std::string function;
  std::string mode;
  std::string severity;
  std::int64_t tau = 0;
  std::size_t constraint_count = 1;
  std::string handler;
  std::size_t run_index = 0;
  std::uint64_t schedule_seed = 0;
  std::uint64_t run_seed = 0;
  bool ok = true;
  std::string failure;
  std::optional<double> m_off_e;
  std::int64_t evaluations = 0;
  std::size_t detections = 0;
  std::vector<PeriodBest> per_time;
  std::vector<double> best_known;
  std::string trace_file;
  std::string schedule_file;
};

std::string record_to_json(const RunRecord& record);
RunRecord record_from_json(std::string_view text);

// Orders records by (function, mode, severity, tau, handler, run).
void canonical_sort(std::vector<RunRecord>& records);

// Runs one handler on one instance, writes its trace CSV and record JSON into
// `directory`, and returns the record. `best` may be null, in which case the
// record carries no M_off_e.
RunRecord run_and_record(const DcopInstance& instance, HandlerKind handler,
                         const DEConfig& de, const RunOptions& options, std::uint64_t seed,
                         const BestKnownTable* best, RunRecord metadata,
                         const std::filesystem::path& directory);

struct ExecuteOptions {
  std::size_t workers = 1;
  bool force = false;
};

// Generates (or reuses) every schedule and best-known table, runs every job
// and writes the report files into config.output_dir. Completed records are
// reused unless `force`; a failing job is recorded with its reason.
std::vector<RunRecord> execute(const ExperimentConfig& config, const std::vector<Job>& jobs,
                               const ExecuteOptions& options = {});

struct ReportOptions {
  std::string metric = "moffe";
  std::string stats = "kw";
  double alpha = 0.05;
};

// Every record_*.json below `directory`.
std::vector<RunRecord> load_records(const std::filesystem::path& directory);

// Writes summary.csv, ranking.csv, stats.csv and series.csv into `directory`.
void write_report(std::vector<RunRecord> records, const std::filesystem::path& directory,
                  const ReportOptions& options = {});

}  // namespace dcop

#endif  // DCOP_HARNESS_HPP_
