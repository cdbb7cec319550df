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

#ifndef DCOP_STATS_HPP_
#define DCOP_STATS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace dcop {

// 1-based ranks of `values`, ties receiving the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct KruskalWallisResult {
  double h = 0.0;
  double p_value = 1.0;
  std::size_t degrees_of_freedom = 0;

  bool significant(double alpha = 0.05) const { return p_value < alpha; }
};

// Tie-corrected H with a chi-square(K-1) tail probability. All-identical data
// gives H = 0, p = 1.
KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

// Upper tail of the chi-square distribution.
double chi_square_survival(double x, double degrees_of_freedom);

struct MannWhitneyResult {
  double u = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

// Two-sided rank-sum test, normal approximation with tie and continuity
// corrections.
MannWhitneyResult mann_whitney(std::span<const double> first, std::span<const double> second);

struct PairwiseComparison {
  std::size_t first = 0;
  std::size_t second = 0;
  double p_raw = 1.0;
  double p_adjusted = 1.0;
  bool significant = false;
};

// Every pair tested with mann_whitney at alpha / (K (K - 1) / 2).
std::vector<PairwiseComparison> bonferroni_pairwise(
    const std::vector<std::vector<double>>& groups, double alpha = 0.05);

}  // namespace dcop

#endif  // DCOP_STATS_HPP_
