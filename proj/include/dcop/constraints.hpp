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

#ifndef DCOP_CONSTRAINTS_HPP_
#define DCOP_CONSTRAINTS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcop/objectives.hpp"
#include "dcop/rng.hpp"

namespace dcop {

// One inequality g(x) = a.x - b <= 0. Generated constraints carry a unit,
// nonnegative normal, so b is also the signed distance of the hyperplane
// from the origin.
struct LinearConstraint {
  std::vector<double> a;
  double b = 0.0;

  double g(std::span<const double> x) const;
  bool operator==(const LinearConstraint&) const = default;
};

using ConstraintSet = std::vector<LinearConstraint>;

// Translation step distribution: b(t) = b(t-1) + k, k ~ U[lk, uk].
struct SeverityProfile {
  std::string name = "medium";
  double lk = -15.0;
  double uk = 15.0;
  double b0 = 2.0;

  // "small" (+-5), "medium" (+-15), "large" (+-25); b0 = 2 for all.
  static SeverityProfile preset(std::string_view name);
  void validate() const;
};

// Trial-evaluation clock. Change k (0-based) fires when the counter reaches
// buffer + k * tau, which activates frame k + 1. Frame 0 is active before the
// first change.
struct ChangeClock {
  std::int64_t tau = 1000;
  std::int64_t buffer = 1000;
  std::int64_t changes = 100;

  void validate() const;
  std::int64_t total_budget() const { return buffer + changes * tau; }
  // Counter value at which frame t becomes active (0 for t = 0).
  std::int64_t activation(std::size_t t) const;
  // Frame active while the counter equals `evaluations`.
  std::size_t time_index_at(std::int64_t evaluations) const;
  std::size_t frame_count() const { return static_cast<std::size_t>(changes) + 1; }
};

enum class ChangeMode { kTranslate, kCombined, kMulti };

std::string_view to_string(ChangeMode mode);
// "translate", "combined" (alias "translate+rotate"), "multi" (alias
// "multi-translate").
ChangeMode parse_change_mode(std::string_view name);

struct ScheduleConfig {
  std::size_t dimension = 30;
  BoxBounds bounds;
  ChangeClock clock;
  ChangeMode mode = ChangeMode::kTranslate;
  SeverityProfile severity;
  std::size_t constraint_count = 1;
  double rotation_probability = 0.5;
  std::size_t swaps_per_rotation = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Immutable per-time sequence of constraint sets.
class ConstraintSchedule {
 public:
  ConstraintSchedule(ScheduleConfig config, std::vector<ConstraintSet> frames);

  const ScheduleConfig& config() const { return config_; }
  std::size_t dimension() const { return config_.dimension; }
  const BoxBounds& bounds() const { return config_.bounds; }
  const ChangeClock& clock() const { return config_.clock; }
  std::size_t frame_count() const { return frames_.size(); }
  const std::vector<ConstraintSet>& frames() const { return frames_; }
  // Throws ContractViolation when t is out of range.
  const ConstraintSet& frame(std::size_t t) const;

  bool operator==(const ConstraintSchedule& other) const;

 private:
  ScheduleConfig config_;
  std::vector<ConstraintSet> frames_;
};

// Scales a nonnegative raw vector to unit Euclidean norm. Throws
// ContractViolation on an all-zero input.
std::vector<double> normalize(std::vector<double> raw);

// U[0,1] draws scaled to unit norm; redraws the (measure-zero) all-zero case.
std::vector<double> generate_unit_normal(std::size_t dim, Rng& rng);

LinearConstraint translate_by(const LinearConstraint& c, double step);
LinearConstraint translate(const LinearConstraint& c, const SeverityProfile& profile,
                           Rng& rng);

LinearConstraint swap_coefficients(const LinearConstraint& c, std::size_t i,
                                   std::size_t j);
// Swaps `swaps` uniformly chosen pairs of distinct coefficients. Identity in
// one dimension.
LinearConstraint rotate(const LinearConstraint& c, Rng& rng, std::size_t swaps = 1);

// Frame 0 gets fresh unit normals with b = b0; every later frame applies one
// change event to the previous one. Deterministic in config.seed.
ConstraintSchedule build_schedule(const ScheduleConfig& config);

bool satisfies(const ConstraintSet& frame, std::span<const double> x);

// Monte Carlo share of [L,U]^D that satisfies every constraint of `frame`.
double feasible_region_ratio(const ConstraintSet& frame, const BoxBounds& bounds,
                             std::size_t dimension, std::uint64_t samples, Rng& rng);

struct SphereOptimum {
  double value = 0.0;
  bool feasible = true;
  std::vector<double> point;
};

// Exact minimum of |x|^2 subject to a.x <= b inside the box, by clamped
// projection. When no box point is feasible, returns the objective at the
// least-violating corner with feasible = false. Assumes L <= 0 <= U.
SphereOptimum sphere_optimum_oracle(const LinearConstraint& c, const BoxBounds& bounds);

}  // namespace dcop

#endif  // DCOP_CONSTRAINTS_HPP_
