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

#include "dcop/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "dcop/error.hpp"

namespace dcop {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

namespace {

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw IoError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

std::string schedule_to_json(const ConstraintSchedule& schedule) {
  const ScheduleConfig& c = schedule.config();
  json doc;
  doc["dimension"] = c.dimension;
  doc["bounds"] = {{"lower", c.bounds.lower}, {"upper", c.bounds.upper}};
  doc["clock"] = {{"tau", c.clock.tau}, {"buffer", c.clock.buffer}, {"changes", c.clock.changes}};
  doc["mode"] = std::string(to_string(c.mode));
  doc["severity"] = {{"name", c.severity.name},
                     {"lk", c.severity.lk},
                     {"uk", c.severity.uk},
                     {"b0", c.severity.b0}};
  doc["m"] = c.constraint_count;
  doc["seed"] = c.seed;
  doc["rotation"] = {{"probability", c.rotation_probability}, {"swaps", c.swaps_per_rotation}};
  json frames = json::array();
  for (std::size_t t = 0; t < schedule.frame_count(); ++t) {
    json constraints = json::array();
    for (const LinearConstraint& lc : schedule.frame(t)) {
      constraints.push_back({{"a", lc.a}, {"b", lc.b}});
    }
    frames.push_back({{"t", t}, {"constraints", std::move(constraints)}});
  }
  doc["frames"] = std::move(frames);
  return doc.dump(1) + "\n";
}

ConstraintSchedule schedule_from_json(std::string_view text) {
  const json doc = parse_json(text, "schedule");
  ScheduleConfig c;
  c.dimension = field<std::size_t>(doc, "dimension");
  const json bounds = field<json>(doc, "bounds");
  c.bounds = {field<double>(bounds, "lower"), field<double>(bounds, "upper")};
  const json clock = field<json>(doc, "clock");
  c.clock = {field<std::int64_t>(clock, "tau"), field<std::int64_t>(clock, "buffer"),
             field<std::int64_t>(clock, "changes")};
  c.mode = parse_change_mode(field<std::string>(doc, "mode"));
  const json sev = field<json>(doc, "severity");
  c.severity.name = sev.contains("name") ? field<std::string>(sev, "name") : "custom";
  c.severity.lk = field<double>(sev, "lk");
  c.severity.uk = field<double>(sev, "uk");
  c.severity.b0 = field<double>(sev, "b0");
  c.constraint_count = field<std::size_t>(doc, "m");
  c.seed = field<std::uint64_t>(doc, "seed");
  if (doc.contains("rotation")) {
    const json rotation = field<json>(doc, "rotation");
    if (rotation.contains("probability")) {
      c.rotation_probability = field<double>(rotation, "probability");
    }
    if (rotation.contains("swaps")) c.swaps_per_rotation = field<std::size_t>(rotation, "swaps");
  }
  std::vector<ConstraintSet> frames;
  for (const json& f : field<json>(doc, "frames")) {
    if (field<std::size_t>(f, "t") != frames.size()) {
      throw IoError("schedule frames must be listed in time order");
    }
    ConstraintSet set;
    for (const json& lc : field<json>(f, "constraints")) {
      set.push_back({field<std::vector<double>>(lc, "a"), field<double>(lc, "b")});
    }
    frames.push_back(std::move(set));
  }
  return ConstraintSchedule(std::move(c), std::move(frames));
}

void save_schedule(const ConstraintSchedule& schedule, const std::filesystem::path& path) {
  write_text(path, schedule_to_json(schedule));
}

ConstraintSchedule load_schedule(const std::filesystem::path& path) {
  return schedule_from_json(read_text(path));
}

std::string best_known_to_json(const BestKnownTable& table) {
  json doc;
  doc["evaluations_per_frame"] = table.evaluations_per_frame;
  doc["seed"] = table.seed;
  json entries = json::array();
  for (const BestKnownEntry& e : table.entries) {
    entries.push_back({{"t", e.time}, {"f", e.f}, {"phi", e.phi}, {"feasible", e.feasible}});
  }
  doc["entries"] = std::move(entries);
  return doc.dump(1) + "\n";
}

BestKnownTable best_known_from_json(std::string_view text) {
  const json doc = parse_json(text, "best-known table");
  BestKnownTable table;
  table.evaluations_per_frame = field<std::uint64_t>(doc, "evaluations_per_frame");
  table.seed = field<std::uint64_t>(doc, "seed");
  for (const json& e : field<json>(doc, "entries")) {
    table.entries.push_back({field<std::size_t>(e, "t"), field<double>(e, "f"),
                             field<double>(e, "phi"), field<bool>(e, "feasible")});
  }
  return table;
}

void save_best_known(const BestKnownTable& table, const std::filesystem::path& path) {
  write_text(path, best_known_to_json(table));
}

BestKnownTable load_best_known(const std::filesystem::path& path) {
  return best_known_from_json(read_text(path));
}

std::string trace_to_csv(const RunTrace& trace, const BestKnownTable* best) {
  std::string out(kTraceHeader);
  out += '\n';
  std::vector<double> errors;
  if (best != nullptr) errors = offline_error_terms(trace, *best);
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& r = trace.rows[i];
    out += std::to_string(r.generation);
    out += ',';
    out += std::to_string(r.evaluations);
    out += ',';
    out += std::to_string(r.time);
    out += ',';
    out += format_double(r.best_f);
    out += ',';
    out += format_double(r.best_phi);
    out += ',';
    out += format_double(r.worst_f);
    out += ',';
    out += best != nullptr ? format_double(errors[i]) : "nan";
    out += '\n';
  }
  return out;
}

void write_trace_csv(const RunTrace& trace, const BestKnownTable* best,
                     const std::filesystem::path& path) {
  write_text(path, trace_to_csv(trace, best));
}

namespace {

double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError("bad number '" + std::string(s) + "' in trace");
  }
  return v;
}

}  // namespace

RunTrace read_trace_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw IoError("'" + path.string() + "' is not a trace file");
  }
  RunTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      cells.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    cells.push_back(rest);
    if (cells.size() != 7) throw IoError("trace row with " + std::to_string(cells.size()) + " cells");
    TraceRow r;
    r.generation = static_cast<std::int64_t>(parse_double(cells[0]));
    r.evaluations = static_cast<std::int64_t>(parse_double(cells[1]));
    r.time = static_cast<std::size_t>(parse_double(cells[2]));
    r.best_f = parse_double(cells[3]);
    r.best_phi = parse_double(cells[4]);
    r.worst_f = parse_double(cells[5]);
    trace.rows.push_back(r);
  }
  if (!trace.rows.empty()) trace.evaluations = trace.rows.back().evaluations;
  return trace;
}

}  // namespace dcop
