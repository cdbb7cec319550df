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

#ifndef DCOP_OBJECTIVES_HPP_
#define DCOP_OBJECTIVES_HPP_

#include <cstddef>
#include <span>
#include <string_view>

namespace dcop {

enum class ObjectiveKind { kSphere, kRastrigin, kAckley, kRosenbrock };

std::string_view to_string(ObjectiveKind kind);

// Accepts "sphere", "rastrigin", "ackley" or "rosenbrock". Throws ConfigError
// on anything else.
ObjectiveKind parse_objective_kind(std::string_view name);

// Axis-aligned search box, identical bounds on every coordinate.
struct BoxBounds {
  double lower = -5.0;
  double upper = 5.0;

  void validate() const;
  bool contains(std::span<const double> x) const;
  double clamp(double v) const { return v < lower ? lower : (v > upper ? upper : v); }
};

// Static benchmark objective. Every kind has its global minimum 0 at the
// origin; Rosenbrock is evaluated at x + 1 to put it there.
class ObjectiveFunction {
 public:
  ObjectiveFunction(ObjectiveKind kind, std::size_t dimension);

  ObjectiveKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }

  // Throws ContractViolation when x.size() != dimension().
  double evaluate(std::span<const double> x) const;
  double operator()(std::span<const double> x) const { return evaluate(x); }

 private:
  ObjectiveKind kind_;
  std::size_t dimension_;
};

}  // namespace dcop

#endif  // DCOP_OBJECTIVES_HPP_
