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

#include "dcop/handlers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dcop/error.hpp"

namespace dcop {

std::string_view to_string(HandlerKind kind) {
  switch (kind) {
    case HandlerKind::kFeasibility: return "feasibility";
    case HandlerKind::kPenalty: return "penalty";
    case HandlerKind::kEpsilon: return "epsilon";
  }
  return "unknown";
}

HandlerKind parse_handler_kind(std::string_view name) {
  if (name == "feasibility") return HandlerKind::kFeasibility;
  if (name == "penalty") return HandlerKind::kPenalty;
  if (name == "epsilon") return HandlerKind::kEpsilon;
  throw ConfigError("unknown handler '" + std::string(name) + "'");
}

Winner feasibility_compare(const Score& first, const Score& second) {
  const bool first_ok = first.phi == 0.0;
  const bool second_ok = second.phi == 0.0;
  if (first_ok && second_ok) return second.f < first.f ? Winner::kSecond : Winner::kFirst;
  if (first_ok != second_ok) return first_ok ? Winner::kFirst : Winner::kSecond;
  return second.phi < first.phi ? Winner::kSecond : Winner::kFirst;
}

Winner epsilon_compare(const Score& first, const Score& second, double eps) {
  const bool first_ok = first.phi <= eps;
  const bool second_ok = second.phi <= eps;
  if (first_ok && second_ok) return second.f < first.f ? Winner::kSecond : Winner::kFirst;
  if (first_ok != second_ok) return first_ok ? Winner::kFirst : Winner::kSecond;
  return second.phi < first.phi ? Winner::kSecond : Winner::kFirst;
}

PopulationStats PopulationStats::of(std::span<const Score> scores) {
  PopulationStats stats;
  if (scores.empty()) return stats;
  stats.f_min = std::numeric_limits<double>::infinity();
  stats.f_max = -std::numeric_limits<double>::infinity();
  for (const Score& s : scores) stats = stats.with(s);
  return stats;
}

PopulationStats PopulationStats::with(const Score& extra) const {
  PopulationStats out = *this;
  if (out.count == 0) {
    out.f_min = extra.f;
    out.f_max = extra.f;
  } else {
    out.f_min = std::min(out.f_min, extra.f);
    out.f_max = std::max(out.f_max, extra.f);
  }
  out.phi_max = std::max(out.phi_max, extra.phi);
  ++out.count;
  if (extra.phi == 0.0) ++out.feasible;
  return out;
}

double PopulationStats::feasible_ratio() const {
  return count == 0 ? 0.0 : static_cast<double>(feasible) / static_cast<double>(count);
}

double penalty_fitness(const Score& s, const PopulationStats& stats) {
  const double f_range = stats.f_max - stats.f_min;
  const double f_hat = f_range > 0.0 ? (s.f - stats.f_min) / f_range : 0.0;
  const double v = stats.phi_max > 0.0 ? s.phi / stats.phi_max : 0.0;
  const double rf = stats.feasible_ratio();
  if (rf == 0.0) return v;  // d = v, X = 0, Y weighted by rf = 0
  const double distance = std::sqrt(f_hat * f_hat + v * v);
  const double x_term = v;
  const double y_term = s.phi == 0.0 ? 0.0 : f_hat;
  return distance + (1.0 - rf) * x_term + rf * y_term;
}

std::vector<double> penalty_fitness(std::span<const Score> population) {
  const PopulationStats stats = PopulationStats::of(population);
  std::vector<double> out;
  out.reserve(population.size());
  for (const Score& s : population) out.push_back(penalty_fitness(s, stats));
  return out;
}

double EpsilonState::level() const {
  if (generations_since_reset >= tc) return 0.0;
  const double frac = 1.0 - static_cast<double>(generations_since_reset) /
                                static_cast<double>(tc);
  return epsilon0 * std::pow(frac, cp);
}

EpsilonState epsilon_reset(std::span<const Score> population,
                           std::size_t generations_per_period,
                           const EpsilonParams& params) {
  if (population.empty()) throw ContractViolation("epsilon reset needs a population");
  std::vector<double> phis;
  phis.reserve(population.size());
  for (const Score& s : population) phis.push_back(s.phi);
  std::sort(phis.begin(), phis.end());
  const auto n = static_cast<double>(population.size());
  std::size_t theta = static_cast<std::size_t>(std::ceil(params.theta_fraction * n));
  theta = std::clamp<std::size_t>(theta, 1, population.size());

  EpsilonState state;
  state.epsilon0 = phis[theta - 1];
  state.cp = params.cp;
  state.tc = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(
             std::ceil(params.tc_fraction * static_cast<double>(generations_per_period))));
  state.generations_since_reset = 0;
  return state;
}

namespace {

class FeasibilityHandler final : public ConstraintHandler {
 public:
  HandlerKind kind() const override { return HandlerKind::kFeasibility; }
  bool prefer_trial(const Score& target, const Score& trial) const override {
    return feasibility_compare(target, trial) == Winner::kSecond;
  }
};

class PenaltyHandler final : public ConstraintHandler {
 public:
  HandlerKind kind() const override { return HandlerKind::kPenalty; }
  void begin_generation(std::span<const Score> snapshot) override {
    stats_ = PopulationStats::of(snapshot);
  }
  // Both duelists are scored on the snapshot plus the trial.
  bool prefer_trial(const Score& target, const Score& trial) const override {
    const PopulationStats joint = stats_.with(trial);
    return penalty_fitness(trial, joint) < penalty_fitness(target, joint);
  }

 private:
  PopulationStats stats_;
};

class EpsilonHandler final : public ConstraintHandler {
 public:
  explicit EpsilonHandler(EpsilonParams params) : params_(params) {}
  HandlerKind kind() const override { return HandlerKind::kEpsilon; }
  void reset(std::span<const Score> population, std::size_t generations_per_period) override {
    state_ = epsilon_reset(population, generations_per_period, params_);
  }
  void begin_generation(std::span<const Score>) override { level_ = state_.level(); }
  bool prefer_trial(const Score& target, const Score& trial) const override {
    return epsilon_compare(target, trial, level_) == Winner::kSecond;
  }
  void end_generation() override { state_.advance(); }

 private:
  EpsilonParams params_;
  EpsilonState state_;
  double level_ = 0.0;
};

}  // namespace

std::unique_ptr<ConstraintHandler> make_handler(HandlerKind kind, const HandlerOptions& options) {
  switch (kind) {
    case HandlerKind::kFeasibility: return std::make_unique<FeasibilityHandler>();
    case HandlerKind::kPenalty: return std::make_unique<PenaltyHandler>();
    case HandlerKind::kEpsilon: return std::make_unique<EpsilonHandler>(options.epsilon);
  }
  throw ConfigError("unknown handler kind");
}

}  // namespace dcop
