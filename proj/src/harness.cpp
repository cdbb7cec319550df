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

#include "dcop/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <tuple>
#include <utility>

#include "json.hpp"

#include "dcop/error.hpp"
#include "dcop/io.hpp"
#include "dcop/rng.hpp"
#include "dcop/stats.hpp"

namespace dcop {

using nlohmann::json;

namespace {

constexpr double kInfeasibleFlagThreshold = 1e-8;

// Runs fn(0..n-1) on up to `workers` threads.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

SeverityProfile parse_severity(const json& j) {
  if (j.is_string()) return SeverityProfile::preset(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("severity must be a preset name or an object");
  SeverityProfile p = j.contains("preset") ? SeverityProfile::preset(j["preset"].get<std::string>())
                                            : SeverityProfile{"custom", -15.0, 15.0, 2.0};
  p.name = j.value("name", p.name);
  p.lk = j.value("lk", p.lk);
  p.uk = j.value("uk", p.uk);
  p.b0 = j.value("b0", p.b0);
  p.validate();
  return p;
}

std::string record_file_name(std::string_view handler, std::size_t run) {
  return "record_" + std::string(handler) + "_run" + std::to_string(run) + ".json";
}

std::string trace_file_name(std::string_view handler, std::size_t run) {
  return "trace_" + std::string(handler) + "_run" + std::to_string(run) + ".csv";
}

std::size_t handler_order(const std::string& name) {
  return static_cast<std::size_t>(parse_handler_kind(name));
}

}  // namespace

std::vector<Setting> standard_settings(ChangeMode translation_mode) {
  const SeverityProfile small = SeverityProfile::preset("small");
  const SeverityProfile medium = SeverityProfile::preset("medium");
  const SeverityProfile large = SeverityProfile::preset("large");
  const ChangeMode rotation_mode =
      translation_mode == ChangeMode::kMulti ? ChangeMode::kMulti : ChangeMode::kCombined;
  return {{translation_mode, small, 1000},  {translation_mode, medium, 1000},
          {translation_mode, large, 1000},  {translation_mode, medium, 2000},
          {translation_mode, medium, 500},  {rotation_mode, medium, 1000}};
}

void ExperimentConfig::validate() const {
  if (functions.empty()) throw ConfigError("experiment lists no functions");
  if (settings.empty()) throw ConfigError("experiment lists no settings");
  if (handlers.empty()) throw ConfigError("experiment lists no handlers");
  if (runs == 0) throw ConfigError("experiment needs at least one run");
  if (dimension == 0) throw ConfigError("dimension must be positive");
  bounds.validate();
  de.validate();
  best_known.de.validate();
  for (const Setting& s : settings) {
    s.severity.validate();
    ChangeClock{s.tau, buffer, changes}.validate();
  }
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  try {
    ExperimentConfig c;
    if (doc.contains("functions")) {
      c.functions.clear();
      for (const auto& f : doc["functions"]) c.functions.push_back(parse_objective_kind(f.get<std::string>()));
    }
    if (doc.contains("handlers")) {
      c.handlers.clear();
      for (const auto& h : doc["handlers"]) c.handlers.push_back(parse_handler_kind(h.get<std::string>()));
    }
    c.runs = doc.value("runs", c.runs);
    c.dimension = doc.value("dimension", c.dimension);
    if (doc.contains("bounds")) {
      c.bounds.lower = doc["bounds"].value("lower", c.bounds.lower);
      c.bounds.upper = doc["bounds"].value("upper", c.bounds.upper);
    }
    c.buffer = doc.value("buffer", c.buffer);
    c.changes = doc.value("changes", c.changes);
    c.multi_constraints = doc.value("constraints", c.multi_constraints);
    c.rotation_probability = doc.value("rotation_probability", c.rotation_probability);
    c.swaps_per_rotation = doc.value("swaps", c.swaps_per_rotation);
    c.base_seed = doc.value("base_seed", c.base_seed);
    c.output_dir = doc.value("output", c.output_dir.string());
    if (doc.contains("de")) {
      const json& de = doc["de"];
      c.de.np = de.value("np", c.de.np);
      c.de.cr = de.value("cr", c.de.cr);
      c.de.f_low = de.value("f_low", c.de.f_low);
      c.de.f_high = de.value("f_high", c.de.f_high);
    }
    if (doc.contains("epsilon")) {
      EpsilonParams& e = c.run_options.handler.epsilon;
      e.theta_fraction = doc["epsilon"].value("theta", e.theta_fraction);
      e.cp = doc["epsilon"].value("cp", e.cp);
      e.tc_fraction = doc["epsilon"].value("tc", e.tc_fraction);
    }
    if (doc.contains("worst")) {
      const std::string w = doc["worst"].get<std::string>();
      if (w == "objective") {
        c.run_options.worst = WorstPolicy::kObjective;
      } else if (w == "lexicographic") {
        c.run_options.worst = WorstPolicy::kLexicographic;
      } else {
        throw ConfigError("worst must be 'objective' or 'lexicographic'");
      }
    }
    if (doc.contains("best_known")) {
      const json& bk = doc["best_known"];
      c.best_known.evaluations_per_frame = bk.value("evals", c.best_known.evaluations_per_frame);
      c.best_known.de.np = bk.value("np", c.best_known.de.np);
      c.best_known.de.cr = bk.value("cr", c.best_known.de.cr);
      c.best_known.de.f_low = bk.value("f_low", c.best_known.de.f_low);
      c.best_known.de.f_high = bk.value("f_high", c.best_known.de.f_high);
    }

    if (doc.contains("settings")) {
      const json& s = doc["settings"];
      if (s.is_string()) {
        if (s.get<std::string>() != "standard") throw ConfigError("settings preset must be 'standard'");
        c.settings = standard_settings();
      } else {
        for (const json& item : s) {
          Setting setting;
          setting.mode = parse_change_mode(item.value("mode", std::string("translate")));
          setting.severity = parse_severity(item.contains("severity") ? item["severity"] : json("medium"));
          setting.tau = item.value("tau", setting.tau);
          c.settings.push_back(setting);
        }
      }
    } else {
      std::vector<ChangeMode> modes;
      for (const auto& m : doc.value("modes", json::array({"translate"}))) {
        modes.push_back(parse_change_mode(m.get<std::string>()));
      }
      std::vector<SeverityProfile> severities;
      for (const auto& s : doc.value("severities", json::array({"medium"}))) {
        severities.push_back(parse_severity(s));
      }
      std::vector<std::int64_t> taus = doc.value("taus", std::vector<std::int64_t>{1000});
      for (ChangeMode m : modes) {
        for (const SeverityProfile& s : severities) {
          for (std::int64_t tau : taus) c.settings.push_back({m, s, tau});
        }
      }
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_text(path));
}

std::string Job::directory() const {
  return std::string(to_string(function)) + "_" + std::string(to_string(setting.mode)) + "_" +
         setting.severity.name + "_tau" + std::to_string(setting.tau);
}

std::uint64_t schedule_seed_for(std::uint64_t base_seed, ObjectiveKind function,
                                const Setting& setting, std::size_t run_index) {
  return derive_seed(base_seed, {to_string(function), to_string(setting.mode),
                                 setting.severity.name, std::to_string(setting.tau),
                                 std::to_string(run_index)});
}

std::uint64_t run_seed_for(std::uint64_t schedule_seed, HandlerKind handler) {
  return derive_seed(schedule_seed, {"run", to_string(handler)});
}

std::vector<Job> expand_matrix(const ExperimentConfig& config) {
  config.validate();
  std::vector<Job> jobs;
  jobs.reserve(config.functions.size() * config.settings.size() * config.handlers.size() *
               config.runs);
  for (ObjectiveKind function : config.functions) {
    for (const Setting& setting : config.settings) {
      for (HandlerKind handler : config.handlers) {
        for (std::size_t run = 0; run < config.runs; ++run) {
          Job job;
          job.function = function;
          job.setting = setting;
          job.handler = handler;
          job.run_index = run;
          job.schedule_seed = schedule_seed_for(config.base_seed, function, setting, run);
          job.run_seed = run_seed_for(job.schedule_seed, handler);
          job.best_known_seed = derive_seed(job.schedule_seed, {"best-known"});
          jobs.push_back(job);
        }
      }
    }
  }
  return jobs;
}

ScheduleConfig schedule_config_for(const ExperimentConfig& config, const Job& job) {
  ScheduleConfig s;
  s.dimension = config.dimension;
  s.bounds = config.bounds;
  s.clock = {job.setting.tau, config.buffer, config.changes};
  s.mode = job.setting.mode;
  s.severity = job.setting.severity;
  s.constraint_count = job.setting.mode == ChangeMode::kMulti ? config.multi_constraints : 1;
  s.rotation_probability = config.rotation_probability;
  s.swaps_per_rotation = config.swaps_per_rotation;
  s.seed = job.schedule_seed;
  return s;
}

std::string record_to_json(const RunRecord& r) {
  json doc;
  doc["function"] = r.function;
  doc["mode"] = r.mode;
  doc["severity"] = r.severity;
  doc["tau"] = r.tau;
  doc["m"] = r.constraint_count;
  doc["handler"] = r.handler;
  doc["run"] = r.run_index;
  doc["schedule_seed"] = r.schedule_seed;
  doc["run_seed"] = r.run_seed;
  doc["status"] = r.ok ? "ok" : "failed";
  if (!r.ok) doc["reason"] = r.failure;
  doc["m_off_e"] = r.m_off_e ? json(*r.m_off_e) : json(nullptr);
  doc["evaluations"] = r.evaluations;
  doc["detections"] = r.detections;
  json per_time = json::array();
  for (const PeriodBest& p : r.per_time) per_time.push_back({{"t", p.time}, {"f", p.f}, {"phi", p.phi}});
  doc["per_time"] = std::move(per_time);
  doc["best_known"] = r.best_known;
  doc["trace"] = r.trace_file;
  doc["schedule"] = r.schedule_file;
  return doc.dump(1) + "\n";
}

RunRecord record_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    RunRecord r;
    r.function = doc.at("function").get<std::string>();
    r.mode = doc.at("mode").get<std::string>();
    r.severity = doc.at("severity").get<std::string>();
    r.tau = doc.at("tau").get<std::int64_t>();
    r.constraint_count = doc.value("m", std::size_t{1});
    r.handler = doc.at("handler").get<std::string>();
    r.run_index = doc.at("run").get<std::size_t>();
    r.schedule_seed = doc.at("schedule_seed").get<std::uint64_t>();
    r.run_seed = doc.at("run_seed").get<std::uint64_t>();
    r.ok = doc.at("status").get<std::string>() == "ok";
    r.failure = doc.value("reason", std::string());
    if (!doc.at("m_off_e").is_null()) r.m_off_e = doc["m_off_e"].get<double>();
    r.evaluations = doc.value("evaluations", std::int64_t{0});
    r.detections = doc.value("detections", std::size_t{0});
    for (const json& p : doc.at("per_time")) {
      r.per_time.push_back({p.at("t").get<std::size_t>(), p.at("f").get<double>(),
                            p.at("phi").get<double>()});
    }
    r.best_known = doc.value("best_known", std::vector<double>{});
    r.trace_file = doc.value("trace", std::string());
    r.schedule_file = doc.value("schedule", std::string());
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("bad run record: ") + e.what());
  }
}

void canonical_sort(std::vector<RunRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& l, const RunRecord& r) {
    return std::tie(l.function, l.mode, l.severity, l.tau, l.constraint_count, l.handler,
                    l.run_index) < std::tie(r.function, r.mode, r.severity, r.tau,
                                            r.constraint_count, r.handler, r.run_index);
  });
}

RunRecord run_and_record(const DcopInstance& instance, HandlerKind handler,
                         const DEConfig& de, const RunOptions& options, std::uint64_t seed,
                         const BestKnownTable* best, RunRecord metadata,
                         const std::filesystem::path& directory) {
  RunRecord record = std::move(metadata);
  record.handler = std::string(to_string(handler));
  record.run_seed = seed;
  const RunTrace trace = run(instance, handler, de, seed, options);
  record.evaluations = trace.evaluations;
  record.detections = trace.detections;
  record.per_time = trace.period_best;
  if (best != nullptr) {
    record.m_off_e = modified_offline_error(trace, *best);
    record.best_known.clear();
    for (std::size_t t = 0; t < instance.schedule->frame_count(); ++t) {
      record.best_known.push_back(best->at(t).f);
    }
  }
  record.trace_file = trace_file_name(record.handler, record.run_index);
  write_trace_csv(trace, best, directory / record.trace_file);
  write_text(directory / record_file_name(record.handler, record.run_index),
             record_to_json(record));
  return record;
}

std::vector<RunRecord> execute(const ExperimentConfig& config, const std::vector<Job>& jobs,
                               const ExecuteOptions& options) {
  config.validate();
  const std::filesystem::path root = config.output_dir;

  // Schedules and best-known tables are shared by every handler at the same
  // coordinates and run index.
  std::map<std::pair<std::string, std::size_t>, std::size_t> group_of;
  std::vector<const Job*> groups;
  for (const Job& job : jobs) {
    auto [it, inserted] = group_of.try_emplace({job.directory(), job.run_index}, groups.size());
    if (inserted) groups.push_back(&job);
  }
  auto schedule_path = [&](const Job& job) {
    return root / job.directory() / ("schedule_run" + std::to_string(job.run_index) + ".json");
  };
  auto best_path = [&](const Job& job) {
    return root / job.directory() / ("bestknown_run" + std::to_string(job.run_index) + ".json");
  };

  std::vector<std::string> group_error(groups.size());
  parallel_for(groups.size(), options.workers, [&](std::size_t g) {
    const Job& job = *groups[g];
    try {
      const auto sched_file = schedule_path(job);
      if (options.force || !std::filesystem::exists(sched_file)) {
        save_schedule(build_schedule(schedule_config_for(config, job)), sched_file);
      }
      const auto best_file = best_path(job);
      if (options.force || !std::filesystem::exists(best_file)) {
        const ConstraintSchedule schedule = load_schedule(sched_file);
        const ObjectiveFunction objective(job.function, schedule.dimension());
        BestKnownOptions bk = config.best_known;
        bk.workers = 1;
        save_best_known(best_known(schedule, objective, bk, job.best_known_seed), best_file);
      }
    } catch (const std::exception& e) {
      group_error[g] = e.what();
    }
  });

  std::vector<RunRecord> records(jobs.size());
  parallel_for(jobs.size(), options.workers, [&](std::size_t i) {
    const Job& job = jobs[i];
    const std::filesystem::path dir = root / job.directory();
    const std::string handler(to_string(job.handler));
    const auto record_file = dir / record_file_name(handler, job.run_index);

    RunRecord meta;
    meta.function = std::string(to_string(job.function));
    meta.mode = std::string(to_string(job.setting.mode));
    meta.severity = job.setting.severity.name;
    meta.tau = job.setting.tau;
    meta.constraint_count = job.setting.mode == ChangeMode::kMulti ? config.multi_constraints : 1;
    meta.handler = handler;
    meta.run_index = job.run_index;
    meta.schedule_seed = job.schedule_seed;
    meta.run_seed = job.run_seed;
    meta.schedule_file = schedule_path(job).filename().string();

    try {
      if (!options.force && std::filesystem::exists(record_file)) {
        RunRecord existing = record_from_json(read_text(record_file));
        if (existing.ok) {
          records[i] = std::move(existing);
          return;
        }
      }
      const std::string& err = group_error[group_of.at({job.directory(), job.run_index})];
      if (!err.empty()) throw Error("schedule preparation failed: " + err);
      auto schedule = std::make_shared<const ConstraintSchedule>(load_schedule(schedule_path(job)));
      const BestKnownTable best = load_best_known(best_path(job));
      const DcopInstance instance{ObjectiveFunction(job.function, schedule->dimension()), schedule};
      records[i] = run_and_record(instance, job.handler, config.de, config.run_options,
                                  job.run_seed, &best, meta, dir);
    } catch (const std::exception& e) {
      meta.ok = false;
      meta.failure = e.what();
      records[i] = meta;
      try {
        write_text(record_file, record_to_json(meta));
      } catch (const std::exception&) {
        // The failure is still reported through the returned record.
      }
    }
  });

  canonical_sort(records);
  write_report(records, root);
  return records;
}

std::vector<RunRecord> load_records(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw IoError("'" + directory.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("record_") && name.ends_with(".json")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> records;
  for (const auto& f : files) records.push_back(record_from_json(read_text(f)));
  canonical_sort(records);
  return records;
}

void write_report(std::vector<RunRecord> records, const std::filesystem::path& directory,
                  const ReportOptions& options) {
  if (options.metric != "moffe") throw ConfigError("unsupported metric '" + options.metric + "'");
  if (options.stats != "kw" && options.stats != "none") {
    throw ConfigError("unsupported stats '" + options.stats + "'");
  }
  canonical_sort(records);

  using Key = std::tuple<std::string, std::string, std::string, std::int64_t, std::size_t>;
  std::map<Key, std::vector<const RunRecord*>> by_coord;
  std::set<std::string, bool (*)(const std::string&, const std::string&)> all_handlers(
      [](const std::string& l, const std::string& r) { return handler_order(l) < handler_order(r); });
  for (const RunRecord& r : records) {
    if (!r.ok) continue;
    by_coord[{r.function, r.mode, r.severity, r.tau, r.constraint_count}].push_back(&r);
    all_handlers.insert(r.handler);
  }
  const std::vector<std::string> handlers(all_handlers.begin(), all_handlers.end());
  auto coord_prefix = [](const Key& k) {
    return std::get<0>(k) + "," + std::get<1>(k) + "," + std::get<2>(k) + "," +
           std::to_string(std::get<3>(k));
  };

  std::string summary = "function,mode,severity,tau,handler,run,M_off_e\n";
  for (const RunRecord& r : records) {
    if (!r.ok) continue;
    summary += r.function + "," + r.mode + "," + r.severity + "," + std::to_string(r.tau) + "," +
               r.handler + "," + std::to_string(r.run_index) + "," +
               (r.m_off_e ? format_double(*r.m_off_e) : std::string("nan")) + "\n";
  }
  write_text(directory / "summary.csv", summary);

  std::string ranking = "function,mode,severity,tau,run,time";
  for (const auto& h : handlers) ranking += "," + h;
  ranking += "\n";
  std::string stats = "function,mode,severity,tau,test,groups,statistic,p_value,significant\n";
  std::string series = "function,mode,severity,tau,time,bestKnown";
  for (const auto& h : handlers) series += "," + h + "_f," + h + "_phi," + h + "_infeasible";
  series += "\n";

  for (const auto& [key, recs] : by_coord) {
    const std::string prefix = coord_prefix(key);
    std::map<std::string, std::map<std::size_t, const RunRecord*>> by_handler;
    for (const RunRecord* r : recs) by_handler[r->handler][r->run_index] = r;
    std::vector<std::string> present;
    for (const auto& h : handlers) {
      if (by_handler.count(h)) present.push_back(h);
    }
    auto cell_row = [&](const std::vector<double>& values) {
      std::string row;
      for (const auto& h : handlers) {
        row += ",";
        const auto it = std::find(present.begin(), present.end(), h);
        if (it != present.end()) row += format_double(values[static_cast<std::size_t>(it - present.begin())]);
      }
      return row;
    };

    // Lexicographic ranking over every (run, time) where all handlers report.
    std::vector<std::vector<Score>> per_time;
    std::vector<std::pair<std::size_t, std::size_t>> labels;
    for (const auto& [run, first] : by_handler[present.front()]) {
      bool complete = true;
      for (const auto& h : present) complete = complete && by_handler[h].count(run) > 0;
      if (!complete) continue;
      for (std::size_t t = 0; t < first->per_time.size(); ++t) {
        std::vector<Score> scores;
        for (const auto& h : present) {
          const RunRecord* r = by_handler[h][run];
          if (t >= r->per_time.size()) throw ReportError("records disagree on time steps");
          scores.push_back({r->per_time[t].f, r->per_time[t].phi});
        }
        per_time.push_back(std::move(scores));
        labels.emplace_back(run, first->per_time[t].time);
      }
    }
    if (!per_time.empty()) {
      const RankingReport report = lexicographic_rank(per_time);
      for (std::size_t i = 0; i < per_time.size(); ++i) {
        ranking += prefix + "," + std::to_string(labels[i].first) + "," +
                   std::to_string(labels[i].second) + cell_row(report.per_time[i]) + "\n";
      }
      ranking += prefix + ",all,aggregate" + cell_row(report.aggregate) + "\n";
      ranking += prefix + ",all,final" + cell_row(report.final_rank) + "\n";
    }

    if (options.stats == "kw" && present.size() >= 2) {
      std::vector<std::vector<double>> groups;
      for (const auto& h : present) {
        std::vector<double> g;
        for (const auto& [run, r] : by_handler[h]) {
          if (r->m_off_e) g.push_back(*r->m_off_e);
        }
        groups.push_back(std::move(g));
      }
      const bool usable = std::all_of(groups.begin(), groups.end(),
                                      [](const auto& g) { return !g.empty(); });
      if (usable) {
        const KruskalWallisResult kw = kruskal_wallis(groups);
        std::string names;
        for (const auto& h : present) names += (names.empty() ? "" : "|") + h;
        stats += prefix + ",kruskal_wallis," + names + "," + format_double(kw.h) + "," +
                 format_double(kw.p_value) + "," + (kw.significant(options.alpha) ? "1" : "0") + "\n";
        for (const PairwiseComparison& c : bonferroni_pairwise(groups, options.alpha)) {
          stats += prefix + ",bonferroni," + present[c.first] + "-" + present[c.second] + "," +
                   format_double(mann_whitney(groups[c.first], groups[c.second]).u) + "," +
                   format_double(c.p_adjusted) + "," + (c.significant ? "1" : "0") + "\n";
        }
      }
    }

    // Per-time means over runs.
    const auto& reference = by_handler[present.front()];
    const std::size_t frames = reference.begin()->second->per_time.size();
    for (std::size_t t = 0; t < frames; ++t) {
      double best_sum = 0.0;
      std::size_t best_count = 0;
      for (const auto& [run, r] : reference) {
        if (t < r->best_known.size()) {
          best_sum += r->best_known[t];
          ++best_count;
        }
      }
      series += prefix + "," + std::to_string(t) + "," +
                (best_count ? format_double(best_sum / static_cast<double>(best_count)) : "nan");
      for (const auto& h : handlers) {
        if (!by_handler.count(h)) {
          series += ",,,";
          continue;
        }
        double f_sum = 0.0, phi_sum = 0.0;
        std::size_t n = 0;
        for (const auto& [run, r] : by_handler[h]) {
          if (t < r->per_time.size()) {
            f_sum += r->per_time[t].f;
            phi_sum += r->per_time[t].phi;
            ++n;
          }
        }
        const double f_mean = n ? f_sum / static_cast<double>(n) : std::nan("");
        const double phi_mean = n ? phi_sum / static_cast<double>(n) : std::nan("");
        series += "," + format_double(f_mean) + "," + format_double(phi_mean) + "," +
                  (phi_mean > kInfeasibleFlagThreshold ? "1" : "0");
      }
      series += "\n";
    }
  }
  write_text(directory / "ranking.csv", ranking);
  write_text(directory / "stats.csv", stats);
  write_text(directory / "series.csv", series);
}

}  // namespace dcop
