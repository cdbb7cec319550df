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

#ifndef DCOP_VIOLATION_HPP_
#define DCOP_VIOLATION_HPP_

#include <span>

#include "dcop/constraints.hpp"

namespace dcop {

// phi(x) = sum max(0, g_i(x)) + sum |h_j(x)|. Generated schedules carry no
// equality constraints, so `equality_residuals` is normally empty.
double sum_violation(std::span<const double> x, const ConstraintSet& frame,
                     std::span<const double> equality_residuals = {});

}  // namespace dcop

#endif  // DCOP_VIOLATION_HPP_
