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

#ifndef DCOP_HANDLERS_HPP_
#define DCOP_HANDLERS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace dcop {

enum class HandlerKind { kFeasibility, kPenalty, kEpsilon };

std::string_view to_string(HandlerKind kind);
HandlerKind parse_handler_kind(std::string_view name);

// Objective value and violation sum of one solution.
struct Score {
  double f = 0.0;
  double phi = 0.0;
};

enum class Winner { kFirst, kSecond };

// Deb's rules. Ties keep the first argument.
Winner feasibility_compare(const Score& first, const Score& second);

// Feasibility rules with every violation <= eps treated as feasible. Ties keep
// the first argument.
Winner epsilon_compare(const Score& first, const Score& second, double eps);

// Population statistics feeding the adaptive penalty.
struct PopulationStats {
  std::size_t count = 0;
  std::size_t feasible = 0;
  double f_min = 0.0;
  double f_max = 0.0;
  double phi_max = 0.0;

  static PopulationStats of(std::span<const Score> scores);
  PopulationStats with(const Score& extra) const;
  double feasible_ratio() const;
};

// Adaptive penalty fitness of `s` against `stats` (lower is better):
// d(x) + (1 - rf) X(x) + rf Y(x) over the normalized objective and violation.
double penalty_fitness(const Score& s, const PopulationStats& stats);
std::vector<double> penalty_fitness(std::span<const Score> population);

struct EpsilonParams {
  double theta_fraction = 0.2;
  double cp = 5.0;
  double tc_fraction = 0.2;
};

struct EpsilonState {
  double epsilon0 = 0.0;
  double cp = 5.0;
  std::int64_t tc = 1;
  std::int64_t generations_since_reset = 0;

  // epsilon0 (1 - g/Tc)^cp for g < Tc, else 0.
  double level() const;
  void advance() { ++generations_since_reset; }
};

// epsilon0 = violation of the ceil(theta * NP)-th least violating member;
// Tc = ceil(tc_fraction * generations_per_period).
EpsilonState epsilon_reset(std::span<const Score> population,
                           std::size_t generations_per_period,
                           const EpsilonParams& params = {});

struct HandlerOptions {
  EpsilonParams epsilon;
};

// Selection policy between a target and its trial. Population-level state is
// read from a per-generation snapshot.
class ConstraintHandler {
 public:
  virtual ~ConstraintHandler() = default;

  virtual HandlerKind kind() const = 0;

  // Called for the initial population and after each reaction to a change.
  virtual void reset(std::span<const Score> population, std::size_t generations_per_period) {
    (void)population;
    (void)generations_per_period;
  }
  virtual void begin_generation(std::span<const Score> snapshot) { (void)snapshot; }
  // True only when the trial strictly beats the target.
  virtual bool prefer_trial(const Score& target, const Score& trial) const = 0;
  virtual void end_generation() {}
};

std::unique_ptr<ConstraintHandler> make_handler(HandlerKind kind,
                                                const HandlerOptions& options = {});

}  // namespace dcop

#endif  // DCOP_HANDLERS_HPP_
