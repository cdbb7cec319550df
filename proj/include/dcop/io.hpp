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

#ifndef DCOP_IO_HPP_
#define DCOP_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "dcop/constraints.hpp"
#include "dcop/engine.hpp"
#include "dcop/metrics.hpp"

namespace dcop {

// Shortest decimal text that round-trips to the same double; "nan"/"inf"
// for non-finite values.
std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
// Writes through a temporary sibling and renames it into place.
void write_text(const std::filesystem::path& path, std::string_view text);

// Schedule document:
// {dimension, bounds:{lower,upper}, clock:{tau,buffer,changes}, mode,
//  severity:{name,lk,uk,b0}, m, seed, rotation:{probability,swaps},
//  frames:[{t, constraints:[{a:[...], b}]}]}
std::string schedule_to_json(const ConstraintSchedule& schedule);
ConstraintSchedule schedule_from_json(std::string_view text);
void save_schedule(const ConstraintSchedule& schedule, const std::filesystem::path& path);
ConstraintSchedule load_schedule(const std::filesystem::path& path);

// {evaluations_per_frame, seed, entries:[{t, f, phi, feasible}]}
std::string best_known_to_json(const BestKnownTable& table);
BestKnownTable best_known_from_json(std::string_view text);
void save_best_known(const BestKnownTable& table, const std::filesystem::path& path);
BestKnownTable load_best_known(const std::filesystem::path& path);

inline constexpr std::string_view kTraceHeader =
    "generation,evalCount,timeIndex,bestF,bestPhi,worstF,errorTerm";

// One line per generation. errorTerm is "nan" when `best` is null.
std::string trace_to_csv(const RunTrace& trace, const BestKnownTable* best);
void write_trace_csv(const RunTrace& trace, const BestKnownTable* best,
                     const std::filesystem::path& path);
// Restores the rows of a trace; period bests are not part of the CSV.
RunTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace dcop

#endif  // DCOP_IO_HPP_
