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

#ifndef DCOP_METRICS_HPP_
#define DCOP_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dcop/constraints.hpp"
#include "dcop/engine.hpp"
#include "dcop/handlers.hpp"
#include "dcop/objectives.hpp"
#include "dcop/rng.hpp"
#include "dcop/violation.hpp"

namespace dcop {

// Approximate feasible optimum f(x*, t) of one frame. When the optimizer finds
// no feasible point, `f` is the objective of the least-violating point found
// and `feasible` is false.
struct BestKnownEntry {
  std::size_t time = 0;
  double f = 0.0;
  double phi = 0.0;
  bool feasible = true;
};

struct BestKnownTable {
  std::uint64_t evaluations_per_frame = 0;
  std::uint64_t seed = 0;
  std::vector<BestKnownEntry> entries;

  // Throws ReportError when `time` has no entry.
  const BestKnownEntry& at(std::size_t time) const;
};

struct BestKnownOptions {
  std::uint64_t evaluations_per_frame = 200000;
  // Static DE settings used for the long per-frame optimization.
  DEConfig de{40, 0.9, 0.4, 0.9};
  // Worker threads across frames; 0 picks the hardware concurrency.
  std::size_t workers = 1;
};

// Static DE with feasibility rules on one frame, stopped at the budget or when
// the population has collapsed.
BestKnownEntry optimize_frame(const ConstraintSet& frame, const ObjectiveFunction& objective,
                              const BoxBounds& bounds, const BestKnownOptions& options,
                              Rng& rng);

// One optimize_frame per time index; frame t draws from its own stream
// derived from (seed, t), so results do not depend on the worker count.
BestKnownTable best_known(const ConstraintSchedule& schedule,
                          const ObjectiveFunction& objective,
                          const BestKnownOptions& options, std::uint64_t seed);

// Per-generation error |f* - f(best feasible)|, substituting the logged worst
// member when the population holds no feasible point.
std::vector<double> offline_error_terms(const RunTrace& trace, const BestKnownTable& best);

// Mean of offline_error_terms over all generations.
double modified_offline_error(const RunTrace& trace, const BestKnownTable& best);

struct RankingReport {
  // per_time[t][k]: rank of algorithm k at time t (1 = best, ties averaged).
  std::vector<std::vector<double>> per_time;
  // Sum of per-time ranks.
  std::vector<double> aggregate;
  // Rank of each algorithm by aggregate, ties averaged.
  std::vector<double> final_rank;
  // Algorithm indices ascending by aggregate; stable for ties.
  std::vector<std::size_t> order;
};

// Ranks of one time step under (phi, then f) ascending.
std::vector<double> lexicographic_ranks(std::span<const Score> algorithms);

// per_time[t][k] is the final best (f, phi) of algorithm k before change t.
RankingReport lexicographic_rank(const std::vector<std::vector<Score>>& per_time);

}  // namespace dcop

#endif  // DCOP_METRICS_HPP_
