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

#include "dcop/objectives.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dcop/error.hpp"

namespace dcop {
namespace {

constexpr double kRastriginA = 10.0;
constexpr double kAckleyA = 20.0;
constexpr double kAckleyB = 0.2;
constexpr double kAckleyC = 2.0 * std::numbers::pi;

double sphere(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return sum;
}

double rastrigin(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) {
    sum += v * v - kRastriginA * std::cos(2.0 * std::numbers::pi * v) + kRastriginA;
  }
  return sum;
}

double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double squares = 0.0;
  double cosines = 0.0;
  for (double v : x) {
    squares += v * v;
    cosines += std::cos(kAckleyC * v);
  }
  // Grouped so the origin evaluates to exactly zero.
  return (kAckleyA - kAckleyA * std::exp(-kAckleyB * std::sqrt(squares / n))) +
         (std::numbers::e - std::exp(cosines / n));
}

double shifted_rosenbrock(std::span<const double> x) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double zi = x[i] + 1.0;
    const double zn = x[i + 1] + 1.0;
    const double t = zn - zi * zi;
    sum += 100.0 * t * t + (1.0 - zi) * (1.0 - zi);
  }
  return sum;
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kSphere: return "sphere";
    case ObjectiveKind::kRastrigin: return "rastrigin";
    case ObjectiveKind::kAckley: return "ackley";
    case ObjectiveKind::kRosenbrock: return "rosenbrock";
  }
  return "unknown";
}

ObjectiveKind parse_objective_kind(std::string_view name) {
  if (name == "sphere") return ObjectiveKind::kSphere;
  if (name == "rastrigin") return ObjectiveKind::kRastrigin;
  if (name == "ackley") return ObjectiveKind::kAckley;
  if (name == "rosenbrock") return ObjectiveKind::kRosenbrock;
  throw ConfigError("unknown objective function '" + std::string(name) + "'");
}

void BoxBounds::validate() const {
  if (!(std::isfinite(lower) && std::isfinite(upper) && lower < upper)) {
    throw ConfigError("box bounds require finite lower < upper");
  }
}

bool BoxBounds::contains(std::span<const double> x) const {
  for (double v : x) {
    if (v < lower || v > upper) return false;
  }
  return true;
}

ObjectiveFunction::ObjectiveFunction(ObjectiveKind kind, std::size_t dimension)
    : kind_(kind), dimension_(dimension) {
  if (dimension == 0) throw ConfigError("objective dimension must be positive");
}

double ObjectiveFunction::evaluate(std::span<const double> x) const {
  if (x.size() != dimension_) {
    throw ContractViolation("objective expects dimension " +
                            std::to_string(dimension_) + ", got " +
                            std::to_string(x.size()));
  }
  switch (kind_) {
    case ObjectiveKind::kSphere: return sphere(x);
    case ObjectiveKind::kRastrigin: return rastrigin(x);
    case ObjectiveKind::kAckley: return ackley(x);
    case ObjectiveKind::kRosenbrock: return shifted_rosenbrock(x);
  }
  return 0.0;
}

}  // namespace dcop
