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

#include "dcop/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "dcop/error.hpp"

namespace dcop {
namespace {

// Sum of t^3 - t over the tie groups of a sample.
double tie_term(std::vector<double> sorted) {
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && values[idx[j]] == values[idx[i]]) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t m = i; m < j; ++m) ranks[idx[m]] = shared;
    i = j;
  }
  return ranks;
}

double chi_square_survival(double x, double degrees_of_freedom) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(degrees_of_freedom / 2.0, x / 2.0);
}

KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw ContractViolation("Kruskal-Wallis needs at least two groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw ContractViolation("Kruskal-Wallis groups must be nonempty");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const auto n = static_cast<double>(pooled.size());
  const std::vector<double> ranks = average_ranks(pooled);

  KruskalWallisResult result;
  result.degrees_of_freedom = groups.size() - 1;
  const double correction = 1.0 - tie_term(pooled) / (n * n * n - n);
  if (correction <= 0.0) return result;  // every value tied

  double between = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
    offset += g.size();
    between += rank_sum * rank_sum / static_cast<double>(g.size());
  }
  const double h = (12.0 / (n * (n + 1.0)) * between - 3.0 * (n + 1.0)) / correction;
  result.h = std::max(0.0, h);
  result.p_value = chi_square_survival(result.h, static_cast<double>(result.degrees_of_freedom));
  return result;
}

MannWhitneyResult mann_whitney(std::span<const double> first, std::span<const double> second) {
  if (first.empty() || second.empty()) throw ContractViolation("rank-sum test needs two nonempty samples");
  std::vector<double> pooled(first.begin(), first.end());
  pooled.insert(pooled.end(), second.begin(), second.end());
  const std::vector<double> ranks = average_ranks(pooled);
  const auto n1 = static_cast<double>(first.size());
  const auto n2 = static_cast<double>(second.size());
  const double n = n1 + n2;

  double r1 = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) r1 += ranks[i];

  MannWhitneyResult result;
  result.u = r1 - n1 * (n1 + 1.0) / 2.0;
  const double mean = n1 * n2 / 2.0;
  const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term(pooled) / (n * (n - 1.0)));
  if (variance <= 0.0) return result;
  const double deviation = std::max(0.0, std::abs(result.u - mean) - 0.5);
  result.z = deviation / std::sqrt(variance);
  result.p_value = std::min(1.0, std::erfc(result.z / std::sqrt(2.0)));
  return result;
}

std::vector<PairwiseComparison> bonferroni_pairwise(
    const std::vector<std::vector<double>>& groups, double alpha) {
  if (groups.size() < 2) throw ContractViolation("pairwise tests need at least two groups");
  const std::size_t k = groups.size();
  const auto pairs = static_cast<double>(k * (k - 1) / 2);
  std::vector<PairwiseComparison> out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      PairwiseComparison c;
      c.first = i;
      c.second = j;
      c.p_raw = mann_whitney(groups[i], groups[j]).p_value;
      c.p_adjusted = std::min(1.0, c.p_raw * pairs);
      c.significant = c.p_raw < alpha / pairs;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace dcop
