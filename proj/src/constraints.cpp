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

#include "dcop/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dcop/error.hpp"

namespace dcop {

double LinearConstraint::g(std::span<const double> x) const {
  if (x.size() != a.size()) {
    throw ContractViolation("constraint expects dimension " + std::to_string(a.size()) +
                            ", got " + std::to_string(x.size()));
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) dot += a[j] * x[j];
  return dot - b;
}

SeverityProfile SeverityProfile::preset(std::string_view name) {
  if (name == "small") return {"small", -5.0, 5.0, 2.0};
  if (name == "medium") return {"medium", -15.0, 15.0, 2.0};
  if (name == "large") return {"large", -25.0, 25.0, 2.0};
  throw ConfigError("unknown severity preset '" + std::string(name) + "'");
}

void SeverityProfile::validate() const {
  if (!(std::isfinite(lk) && std::isfinite(uk) && std::isfinite(b0))) {
    throw ConfigError("severity values must be finite");
  }
  if (lk > uk) throw ConfigError("severity requires lk <= uk");
}

void ChangeClock::validate() const {
  if (tau <= 0) throw ConfigError("tau must be positive");
  if (buffer <= 0) throw ConfigError("buffer must be positive");
  if (changes <= 0) throw ConfigError("change count must be positive");
}

std::int64_t ChangeClock::activation(std::size_t t) const {
  if (t == 0) return 0;
  return buffer + static_cast<std::int64_t>(t - 1) * tau;
}

std::size_t ChangeClock::time_index_at(std::int64_t evaluations) const {
  if (evaluations < buffer) return 0;
  const std::int64_t fired = (evaluations - buffer) / tau + 1;
  return static_cast<std::size_t>(std::min(fired, changes));
}

std::string_view to_string(ChangeMode mode) {
  switch (mode) {
    case ChangeMode::kTranslate: return "translate";
    case ChangeMode::kCombined: return "combined";
    case ChangeMode::kMulti: return "multi";
  }
  return "unknown";
}

ChangeMode parse_change_mode(std::string_view name) {
  if (name == "translate") return ChangeMode::kTranslate;
  if (name == "combined" || name == "translate+rotate") return ChangeMode::kCombined;
  if (name == "multi" || name == "multi-translate") return ChangeMode::kMulti;
  throw ConfigError("unknown change mode '" + std::string(name) + "'");
}

void ScheduleConfig::validate() const {
  if (dimension == 0) throw ConfigError("dimension must be positive");
  bounds.validate();
  clock.validate();
  severity.validate();
  if (constraint_count == 0) throw ConfigError("constraint count must be >= 1");
  if (mode != ChangeMode::kMulti && constraint_count != 1) {
    throw ConfigError("mode '" + std::string(to_string(mode)) +
                      "' drives a single constraint; use mode 'multi' for m > 1");
  }
  if (!(rotation_probability >= 0.0 && rotation_probability <= 1.0)) {
    throw ConfigError("rotation probability must lie in [0, 1]");
  }
  if (swaps_per_rotation == 0) throw ConfigError("rotation needs at least one swap");
}

ConstraintSchedule::ConstraintSchedule(ScheduleConfig config, std::vector<ConstraintSet> frames)
    : config_(std::move(config)), frames_(std::move(frames)) {
  config_.validate();
  if (frames_.size() != config_.clock.frame_count()) {
    throw ConfigError("schedule holds " + std::to_string(frames_.size()) +
                      " frames, clock expects " +
                      std::to_string(config_.clock.frame_count()));
  }
  for (const ConstraintSet& frame : frames_) {
    if (frame.size() != config_.constraint_count) {
      throw ConfigError("every frame must hold m constraints");
    }
    for (const LinearConstraint& c : frame) {
      if (c.a.size() != config_.dimension) {
        throw ConfigError("constraint dimension does not match schedule dimension");
      }
    }
  }
}

const ConstraintSet& ConstraintSchedule::frame(std::size_t t) const {
  if (t >= frames_.size()) {
    throw ContractViolation("time index " + std::to_string(t) + " outside schedule");
  }
  return frames_[t];
}

bool ConstraintSchedule::operator==(const ConstraintSchedule& other) const {
  const ScheduleConfig& l = config_;
  const ScheduleConfig& r = other.config_;
  return l.dimension == r.dimension && l.bounds.lower == r.bounds.lower &&
         l.bounds.upper == r.bounds.upper && l.clock.tau == r.clock.tau &&
         l.clock.buffer == r.clock.buffer && l.clock.changes == r.clock.changes &&
         l.mode == r.mode && l.severity.lk == r.severity.lk &&
         l.severity.uk == r.severity.uk && l.severity.b0 == r.severity.b0 &&
         l.constraint_count == r.constraint_count && l.seed == r.seed &&
         frames_ == other.frames_;
}

std::vector<double> normalize(std::vector<double> raw) {
  double norm = 0.0;
  for (double v : raw) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw ContractViolation("cannot normalize a zero vector");
  for (double& v : raw) v /= norm;
  return raw;
}

std::vector<double> generate_unit_normal(std::size_t dim, Rng& rng) {
  if (dim == 0) throw ContractViolation("unit normal needs dim >= 1");
  std::vector<double> raw(dim);
  for (;;) {
    bool nonzero = false;
    for (double& v : raw) {
      v = rng.uniform();
      nonzero = nonzero || v > 0.0;
    }
    if (nonzero) return normalize(std::move(raw));
  }
}

LinearConstraint translate_by(const LinearConstraint& c, double step) {
  LinearConstraint out = c;
  out.b += step;
  return out;
}

LinearConstraint translate(const LinearConstraint& c, const SeverityProfile& profile,
                           Rng& rng) {
  return translate_by(c, rng.uniform(profile.lk, profile.uk));
}

LinearConstraint swap_coefficients(const LinearConstraint& c, std::size_t i, std::size_t j) {
  if (i >= c.a.size() || j >= c.a.size()) {
    throw ContractViolation("swap index outside coefficient vector");
  }
  LinearConstraint out = c;
  std::swap(out.a[i], out.a[j]);
  return out;
}

LinearConstraint rotate(const LinearConstraint& c, Rng& rng, std::size_t swaps) {
  const std::size_t dim = c.a.size();
  if (dim < 2) return c;
  LinearConstraint out = c;
  for (std::size_t s = 0; s < swaps; ++s) {
    const std::size_t i = rng.index(dim);
    std::size_t j = rng.index(dim - 1);
    if (j >= i) ++j;
    std::swap(out.a[i], out.a[j]);
  }
  return out;
}

ConstraintSchedule build_schedule(const ScheduleConfig& config) {
  config.validate();
  Rng rng(config.seed);
  std::vector<ConstraintSet> frames;
  frames.reserve(config.clock.frame_count());

  ConstraintSet initial;
  initial.reserve(config.constraint_count);
  for (std::size_t k = 0; k < config.constraint_count; ++k) {
    initial.push_back({generate_unit_normal(config.dimension, rng), config.severity.b0});
  }
  frames.push_back(std::move(initial));

  for (std::int64_t change = 0; change < config.clock.changes; ++change) {
    ConstraintSet next = frames.back();
    switch (config.mode) {
      case ChangeMode::kTranslate:
        next[0] = translate(next[0], config.severity, rng);
        break;
      case ChangeMode::kCombined:
        if (rng.uniform() < config.rotation_probability) {
          next[0] = rotate(next[0], rng, config.swaps_per_rotation);
        } else {
          next[0] = translate(next[0], config.severity, rng);
        }
        break;
      case ChangeMode::kMulti: {
        const std::size_t which = rng.index(next.size());
        next[which] = translate(next[which], config.severity, rng);
        break;
      }
    }
    frames.push_back(std::move(next));
  }
  return ConstraintSchedule(config, std::move(frames));
}

bool satisfies(const ConstraintSet& frame, std::span<const double> x) {
  return std::all_of(frame.begin(), frame.end(),
                     [&](const LinearConstraint& c) { return c.g(x) <= 0.0; });
}

double feasible_region_ratio(const ConstraintSet& frame, const BoxBounds& bounds,
                             std::size_t dimension, std::uint64_t samples, Rng& rng) {
  if (samples == 0) throw ContractViolation("feasible region needs at least one sample");
  bounds.validate();
  std::vector<double> x(dimension);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (double& v : x) v = rng.uniform(bounds.lower, bounds.upper);
    if (satisfies(frame, x)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

SphereOptimum sphere_optimum_oracle(const LinearConstraint& c, const BoxBounds& bounds) {
  bounds.validate();
  if (bounds.lower > 0.0 || bounds.upper < 0.0) {
    throw ContractViolation("sphere oracle requires the origin inside the box");
  }
  const std::size_t dim = c.a.size();
  SphereOptimum result;
  result.point.assign(dim, 0.0);
  if (c.b >= 0.0) return result;

  // Least-violating corner: every coordinate pushed against a.x.
  double corner_dot = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    if (c.a[j] > 0.0) corner_dot += c.a[j] * bounds.lower;
    if (c.a[j] < 0.0) corner_dot += c.a[j] * bounds.upper;
  }
  if (corner_dot > c.b) {
    result.feasible = false;
    result.value = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      if (c.a[j] > 0.0) result.point[j] = bounds.lower;
      if (c.a[j] < 0.0) result.point[j] = bounds.upper;
      result.value += result.point[j] * result.point[j];
    }
    return result;
  }

  // Project onto a.x = b over the free coordinates; pin any coordinate that
  // leaves the box and re-project. Pinned coordinates never get released
  // because each pass only grows the projection multiplier.
  std::vector<bool> pinned(dim, false);
  for (std::size_t j = 0; j < dim; ++j) pinned[j] = c.a[j] == 0.0;
  for (;;) {
    double residual = c.b;
    double free_norm2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      if (pinned[j]) {
        residual -= c.a[j] * result.point[j];
      } else {
        free_norm2 += c.a[j] * c.a[j];
      }
    }
    if (free_norm2 == 0.0) break;
    const double lambda = residual / free_norm2;
    bool clamped = false;
    for (std::size_t j = 0; j < dim; ++j) {
      if (pinned[j]) continue;
      const double v = lambda * c.a[j];
      if (v < bounds.lower || v > bounds.upper) {
        result.point[j] = bounds.clamp(v);
        pinned[j] = true;
        clamped = true;
      } else {
        result.point[j] = v;
      }
    }
    if (!clamped) break;
  }
  result.value = 0.0;
  for (double v : result.point) result.value += v * v;
  return result;
}

}  // namespace dcop
