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

#include "dcop/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dcop/error.hpp"
#include "dcop/violation.hpp"

namespace dcop {
namespace {

constexpr double kDetectionTolerance = 1e-12;

struct DonorIndices {
  std::size_t r0, r1, r2;
};

DonorIndices pick_donors(std::size_t np, std::size_t i, Rng& rng) {
  DonorIndices d{};
  do d.r0 = rng.index(np); while (d.r0 == i);
  do d.r1 = rng.index(np); while (d.r1 == i || d.r1 == d.r0);
  do d.r2 = rng.index(np); while (d.r2 == i || d.r2 == d.r0 || d.r2 == d.r1);
  return d;
}

bool lexicographically_better(double f, double phi, double best_f, double best_phi) {
  return phi < best_phi || (phi == best_phi && f < best_f);
}

}  // namespace

void DEConfig::validate() const {
  if (np < 4) throw ConfigError("population size must be at least 4");
  if (!(cr >= 0.0 && cr <= 1.0)) throw ConfigError("CR must lie in [0, 1]");
  if (!(f_low > 0.0 && f_low <= f_high)) throw ConfigError("scale factor needs 0 < Flow <= Fhigh");
}

std::vector<double> difference_mutant(std::span<const double> base,
                                      std::span<const double> first,
                                      std::span<const double> second, double scale) {
  if (first.size() != base.size() || second.size() != base.size()) {
    throw ContractViolation("mutation vectors differ in length");
  }
  std::vector<double> v(base.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = base[j] + scale * (first[j] - second[j]);
  return v;
}

std::vector<double> mutate(const Population& population, std::size_t i, double scale,
                           Rng& rng) {
  if (population.size() < 4) throw ContractViolation("mutation needs at least 4 members");
  if (i >= population.size()) throw ContractViolation("target index outside population");
  const DonorIndices d = pick_donors(population.size(), i, rng);
  return difference_mutant(population[d.r0].x, population[d.r1].x, population[d.r2].x, scale);
}

std::vector<double> binomial_crossover(std::span<const double> target,
                                       std::span<const double> mutant, double cr,
                                       std::size_t jrand, std::span<const double> draws) {
  if (mutant.size() != target.size() || draws.size() != target.size()) {
    throw ContractViolation("crossover vectors differ in length");
  }
  if (jrand >= target.size()) throw ContractViolation("jrand outside vector");
  std::vector<double> trial(target.begin(), target.end());
  for (std::size_t j = 0; j < trial.size(); ++j) {
    if (draws[j] < cr || j == jrand) trial[j] = mutant[j];
  }
  return trial;
}

std::vector<double> crossover(std::span<const double> target, std::span<const double> mutant,
                              double cr, const BoxBounds& bounds, Rng& rng) {
  if (target.empty()) throw ContractViolation("crossover on empty vectors");
  const std::size_t jrand = rng.index(target.size());
  std::vector<double> draws(target.size());
  for (double& d : draws) d = rng.uniform();
  std::vector<double> trial = binomial_crossover(target, mutant, cr, jrand, draws);
  clamp_to_bounds(trial, bounds);
  return trial;
}

void clamp_to_bounds(std::span<double> x, const BoxBounds& bounds) {
  for (double& v : x) v = bounds.clamp(v);
}

void make_trial(const Population& population, std::size_t i, double scale, double cr,
                const BoxBounds& bounds, Rng& rng, std::span<double> out) {
  const DonorIndices d = pick_donors(population.size(), i, rng);
  const std::vector<double>& target = population[i].x;
  const std::vector<double>& base = population[d.r0].x;
  const std::vector<double>& x1 = population[d.r1].x;
  const std::vector<double>& x2 = population[d.r2].x;
  const std::size_t jrand = rng.index(target.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double draw = rng.uniform();
    const double v = (draw < cr || j == jrand) ? base[j] + scale * (x1[j] - x2[j]) : target[j];
    out[j] = bounds.clamp(v);
  }
}

Individual evaluate_individual(std::vector<double> x, const ObjectiveFunction& objective,
                               const ConstraintSet& frame, std::size_t time) {
  Individual ind;
  ind.f = objective(x);
  ind.phi = sum_violation(x, frame);
  ind.x = std::move(x);
  ind.evaluated_at = time;
  return ind;
}

bool detect_change(const Individual& first, const Individual& middle,
                   const ConstraintSet& frame, const ObjectiveFunction& objective) {
  for (const Individual* s : {&first, &middle}) {
    const double f = objective(s->x);
    const double phi = sum_violation(s->x, frame);
    if (std::abs(f - s->f) > kDetectionTolerance ||
        std::abs(phi - s->phi) > kDetectionTolerance) {
      return true;
    }
  }
  return false;
}

Engine::Engine(const DcopInstance& instance, HandlerKind handler, const DEConfig& config,
               std::uint64_t seed, const RunOptions& options)
    : instance_(instance),
      config_(config),
      options_(options),
      handler_(make_handler(handler, options.handler)),
      rng_(seed) {
  config_.validate();
  if (!instance_.schedule) throw ConfigError("instance has no constraint schedule");
  const ConstraintSchedule& schedule = *instance_.schedule;
  if (instance_.objective.dimension() != schedule.dimension()) {
    throw ConfigError("objective and schedule dimensions differ");
  }
  const ChangeClock& clock = schedule.clock();
  const auto np = static_cast<std::int64_t>(config_.np);
  if (clock.buffer % np != 0 || clock.tau % np != 0) {
    throw ConfigError("buffer (" + std::to_string(clock.buffer) + ") and tau (" +
                      std::to_string(clock.tau) + ") must be multiples of NP (" +
                      std::to_string(config_.np) + ")");
  }
  initialize_population(0);
}

bool Engine::finished() const {
  return evaluations_ >= instance_.schedule->clock().total_budget();
}

std::size_t Engine::generations_per_period() const {
  return static_cast<std::size_t>(instance_.schedule->clock().tau) / config_.np;
}

std::vector<Score> Engine::scores() const {
  std::vector<Score> out;
  out.reserve(population_.size());
  for (const Individual& ind : population_) out.push_back(ind.score());
  return out;
}

void Engine::initialize_population(std::size_t time) {
  const ConstraintSchedule& schedule = *instance_.schedule;
  const BoxBounds& bounds = schedule.bounds();
  const ConstraintSet& frame = schedule.frame(time);
  population_.clear();
  population_.reserve(config_.np);
  for (std::size_t i = 0; i < config_.np; ++i) {
    std::vector<double> x(schedule.dimension());
    for (double& v : x) v = rng_.uniform(bounds.lower, bounds.upper);
    population_.push_back(evaluate_individual(std::move(x), instance_.objective, frame, time));
  }
  time_ = time;
  const std::vector<Score> s = scores();
  handler_->reset(s, generations_per_period());
}

void Engine::react_to_change(std::size_t time) {
  ++detections_;
  initialize_population(time);
}

TraceRow Engine::step() {
  if (finished()) throw ContractViolation("evaluation budget already exhausted");
  const ConstraintSchedule& schedule = *instance_.schedule;
  const std::size_t active = schedule.clock().time_index_at(evaluations_);
  const ConstraintSet& frame = schedule.frame(active);

  if (detect_change(population_[first_sentinel()], population_[middle_sentinel()], frame,
                    instance_.objective)) {
    react_to_change(active);
  } else {
    // Undetected changes leave the cached values of the members stale.
    time_ = active;
  }

  const double scale = rng_.uniform(config_.f_low, config_.f_high);
  const std::vector<Score> snapshot = scores();
  handler_->begin_generation(snapshot);

  Population next = population_;
  std::vector<double> trial(schedule.dimension());
  for (std::size_t i = 0; i < population_.size(); ++i) {
    make_trial(population_, i, scale, config_.cr, schedule.bounds(), rng_, trial);
    Individual candidate = evaluate_individual(trial, instance_.objective, frame, active);
    ++evaluations_;
    if (handler_->prefer_trial(population_[i].score(), candidate.score())) {
      next[i] = std::move(candidate);
    }
  }
  population_ = std::move(next);
  handler_->end_generation();
  ++generation_;

  TraceRow row;
  row.generation = generation_;
  row.evaluations = evaluations_;
  row.time = active;
  bool first = true;
  double worst_f = 0.0;
  double worst_phi = 0.0;
  for (const Individual& ind : population_) {
    const double phi = ind.evaluated_at == active ? ind.phi : sum_violation(ind.x, frame);
    if (first || lexicographically_better(ind.f, phi, row.best_f, row.best_phi)) {
      row.best_f = ind.f;
      row.best_phi = phi;
    }
    const bool worse = options_.worst == WorstPolicy::kObjective
                           ? ind.f > worst_f
                           : lexicographically_better(worst_f, worst_phi, ind.f, phi);
    if (first || worse) {
      worst_f = ind.f;
      worst_phi = phi;
    }
    first = false;
  }
  row.worst_f = worst_f;
  return row;
}

RunTrace Engine::run() {
  RunTrace trace;
  const ChangeClock& clock = instance_.schedule->clock();
  trace.rows.reserve(static_cast<std::size_t>(clock.total_budget()) / config_.np);
  while (!finished()) {
    const TraceRow row = step();
    trace.rows.push_back(row);
    if (finished() || clock.time_index_at(evaluations_) != row.time) {
      trace.period_best.push_back({row.time, row.best_f, row.best_phi});
    }
  }
  trace.evaluations = evaluations_;
  trace.detections = detections_;
  return trace;
}

RunTrace run(const DcopInstance& instance, HandlerKind handler, const DEConfig& config,
             std::uint64_t seed, const RunOptions& options) {
  Engine engine(instance, handler, config, seed, options);
  return engine.run();
}

}  // namespace dcop
