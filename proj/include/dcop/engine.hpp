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

#ifndef DCOP_ENGINE_HPP_
#define DCOP_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dcop/constraints.hpp"
#include "dcop/handlers.hpp"
#include "dcop/objectives.hpp"
#include "dcop/rng.hpp"

namespace dcop {

struct Individual {
  std::vector<double> x;
  double f = 0.0;
  double phi = 0.0;
  // Frame the cached f and phi were computed against.
  std::size_t evaluated_at = 0;

  Score score() const { return {f, phi}; }
};

using Population = std::vector<Individual>;

struct DEConfig {
  std::size_t np = 20;
  double cr = 0.2;
  double f_low = 0.2;
  double f_high = 0.8;

  void validate() const;
};

// Objective plus constraint schedule. The schedule is immutable and shared
// between concurrent runs.
struct DcopInstance {
  ObjectiveFunction objective;
  std::shared_ptr<const ConstraintSchedule> schedule;
};

enum class WorstPolicy { kObjective, kLexicographic };

struct RunOptions {
  HandlerOptions handler;
  WorstPolicy worst = WorstPolicy::kObjective;
};

// One generation of the trace. best_* is the lexicographic (phi, f) best of
// the population after selection, using violations re-measured against the
// active frame; best_phi == 0 therefore means a feasible member exists and
// best_f is the best feasible objective.
struct TraceRow {
  std::int64_t generation = 0;
  std::int64_t evaluations = 0;
  std::size_t time = 0;
  double best_f = 0.0;
  double best_phi = 0.0;
  double worst_f = 0.0;
};

// Lexicographic best at the last generation of each time index.
struct PeriodBest {
  std::size_t time = 0;
  double f = 0.0;
  double phi = 0.0;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  std::vector<PeriodBest> period_best;
  std::int64_t evaluations = 0;
  std::size_t detections = 0;
};

// x_r0 + F (x_r1 - x_r2).
std::vector<double> difference_mutant(std::span<const double> base,
                                      std::span<const double> first,
                                      std::span<const double> second, double scale);

// rand/1 mutant for slot i with r0, r1, r2 distinct and different from i.
std::vector<double> mutate(const Population& population, std::size_t i, double scale,
                           Rng& rng);

// Binomial crossover with an explicit forced index and per-gene draws in
// [0, 1): gene j comes from the mutant when draws[j] < CR or j == jrand.
std::vector<double> binomial_crossover(std::span<const double> target,
                                       std::span<const double> mutant, double cr,
                                       std::size_t jrand, std::span<const double> draws);

// Binomial crossover followed by clamping each coordinate into the box.
std::vector<double> crossover(std::span<const double> target, std::span<const double> mutant,
                              double cr, const BoxBounds& bounds, Rng& rng);

void clamp_to_bounds(std::span<double> x, const BoxBounds& bounds);

// Fused rand/1/bin trial for slot i written into `out` (size D). Consumes the
// random stream in the same order as mutate() followed by crossover().
void make_trial(const Population& population, std::size_t i, double scale, double cr,
                const BoxBounds& bounds, Rng& rng, std::span<double> out);

Individual evaluate_individual(std::vector<double> x, const ObjectiveFunction& objective,
                               const ConstraintSet& frame, std::size_t time);

// Re-evaluates the two sentinels against `frame`; true iff any cached f or
// phi moved by more than 1e-12.
bool detect_change(const Individual& first, const Individual& middle,
                   const ConstraintSet& frame, const ObjectiveFunction& objective);

// Dynamic DE loop: sentinel change detection once per generation, rand/1/bin
// trials, handler-mediated selection, full re-initialization on detection.
class Engine {
 public:
  Engine(const DcopInstance& instance, HandlerKind handler, const DEConfig& config,
         std::uint64_t seed, const RunOptions& options = {});

  const Population& population() const { return population_; }
  std::int64_t evaluations() const { return evaluations_; }
  std::int64_t generation() const { return generation_; }
  std::size_t time() const { return time_; }
  std::size_t detections() const { return detections_; }
  bool finished() const;

  // Indices of the change-detection sentinels (first and middle slot).
  std::size_t first_sentinel() const { return 0; }
  std::size_t middle_sentinel() const { return population_.size() / 2; }

  // Replaces the population with fresh uniform samples evaluated against
  // `time`, resets the handler and moves the engine to that frame.
  void react_to_change(std::size_t time);

  // One generation; returns its trace row.
  TraceRow step();

  RunTrace run();

 private:
  void initialize_population(std::size_t time);
  std::vector<Score> scores() const;
  std::size_t generations_per_period() const;

  DcopInstance instance_;
  DEConfig config_;
  RunOptions options_;
  std::unique_ptr<ConstraintHandler> handler_;
  Rng rng_;
  Population population_;
  std::int64_t evaluations_ = 0;
  std::int64_t generation_ = 0;
  std::size_t time_ = 0;
  std::size_t detections_ = 0;
};

RunTrace run(const DcopInstance& instance, HandlerKind handler, const DEConfig& config,
             std::uint64_t seed, const RunOptions& options = {});

}  // namespace dcop

#endif  // DCOP_ENGINE_HPP_
