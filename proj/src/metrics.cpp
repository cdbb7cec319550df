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

#include "dcop/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

#include "dcop/error.hpp"
#include "dcop/stats.hpp"

namespace dcop {

double sum_violation(std::span<const double> x, const ConstraintSet& frame,
                     std::span<const double> equality_residuals) {
  double phi = 0.0;
  for (const LinearConstraint& c : frame) phi += std::max(0.0, c.g(x));
  for (double h : equality_residuals) phi += std::abs(h);
  return phi;
}

const BestKnownEntry& BestKnownTable::at(std::size_t time) const {
  for (const BestKnownEntry& e : entries) {
    if (e.time == time) return e;
  }
  throw ReportError("best-known table has no entry for time " + std::to_string(time));
}

BestKnownEntry optimize_frame(const ConstraintSet& frame, const ObjectiveFunction& objective,
                              const BoxBounds& bounds, const BestKnownOptions& options,
                              Rng& rng) {
  const DEConfig& de = options.de;
  de.validate();
  const std::size_t dim = objective.dimension();
  const auto budget = options.evaluations_per_frame;

  Population population;
  population.reserve(de.np);
  std::uint64_t used = 0;
  for (std::size_t i = 0; i < de.np; ++i) {
    std::vector<double> x(dim);
    for (double& v : x) v = rng.uniform(bounds.lower, bounds.upper);
    population.push_back(evaluate_individual(std::move(x), objective, frame, 0));
    ++used;
  }

  Population next = population;
  std::vector<double> trial(dim);
  while (used + de.np <= budget) {
    const double scale = rng.uniform(de.f_low, de.f_high);
    for (std::size_t i = 0; i < de.np; ++i) {
      make_trial(population, i, scale, de.cr, bounds, rng, trial);
      const double f = objective(trial);
      const double phi = sum_violation(trial, frame);
      ++used;
      if (feasibility_compare(population[i].score(), {f, phi}) == Winner::kSecond) {
        next[i].x = trial;
        next[i].f = f;
        next[i].phi = phi;
      } else {
        next[i] = population[i];
      }
    }
    std::swap(population, next);

    const auto [f_lo, f_hi] = std::minmax_element(
        population.begin(), population.end(),
        [](const Individual& l, const Individual& r) { return l.f < r.f; });
    const auto [p_lo, p_hi] = std::minmax_element(
        population.begin(), population.end(),
        [](const Individual& l, const Individual& r) { return l.phi < r.phi; });
    const bool collapsed = f_hi->f - f_lo->f <= 1e-12 * (1.0 + std::abs(f_lo->f)) &&
                           p_hi->phi - p_lo->phi <= 1e-12;
    if (collapsed) break;
  }

  const Individual* best = &population.front();
  for (const Individual& ind : population) {
    if (feasibility_compare(best->score(), ind.score()) == Winner::kSecond) best = &ind;
  }
  return {0, best->f, best->phi, best->phi == 0.0};
}

BestKnownTable best_known(const ConstraintSchedule& schedule,
                          const ObjectiveFunction& objective,
                          const BestKnownOptions& options, std::uint64_t seed) {
  if (objective.dimension() != schedule.dimension()) {
    throw ConfigError("objective and schedule dimensions differ");
  }
  BestKnownTable table;
  table.evaluations_per_frame = options.evaluations_per_frame;
  table.seed = seed;
  table.entries.resize(schedule.frame_count());

  auto solve = [&](std::size_t t) {
    Rng rng(derive_seed(seed, {"best-known", std::to_string(t)}));
    BestKnownEntry e = optimize_frame(schedule.frame(t), objective, schedule.bounds(), options, rng);
    e.time = t;
    table.entries[t] = e;
  };

  std::size_t workers = options.workers == 0 ? std::thread::hardware_concurrency()
                                             : options.workers;
  workers = std::clamp<std::size_t>(workers, 1, schedule.frame_count());
  if (workers == 1) {
    for (std::size_t t = 0; t < schedule.frame_count(); ++t) solve(t);
    return table;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < schedule.frame_count(); t = next++) solve(t);
    });
  }
  pool.clear();
  return table;
}

std::vector<double> offline_error_terms(const RunTrace& trace, const BestKnownTable& best) {
  std::vector<double> terms;
  terms.reserve(trace.rows.size());
  for (const TraceRow& row : trace.rows) {
    const double reference = row.best_phi == 0.0 ? row.best_f : row.worst_f;
    terms.push_back(std::abs(best.at(row.time).f - reference));
  }
  return terms;
}

double modified_offline_error(const RunTrace& trace, const BestKnownTable& best) {
  if (trace.rows.empty()) throw ReportError("trace holds no generations");
  const std::vector<double> terms = offline_error_terms(trace, best);
  return std::accumulate(terms.begin(), terms.end(), 0.0) / static_cast<double>(terms.size());
}

std::vector<double> lexicographic_ranks(std::span<const Score> algorithms) {
  const std::size_t k = algorithms.size();
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t l, std::size_t r) {
    const Score& a = algorithms[l];
    const Score& b = algorithms[r];
    return a.phi < b.phi || (a.phi == b.phi && a.f < b.f);
  };
  std::stable_sort(idx.begin(), idx.end(), less);
  std::vector<double> ranks(k);
  for (std::size_t i = 0; i < k;) {
    std::size_t j = i + 1;
    while (j < k && !less(idx[i], idx[j])) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t m = i; m < j; ++m) ranks[idx[m]] = shared;
    i = j;
  }
  return ranks;
}

RankingReport lexicographic_rank(const std::vector<std::vector<Score>>& per_time) {
  RankingReport report;
  if (per_time.empty()) return report;
  const std::size_t k = per_time.front().size();
  report.aggregate.assign(k, 0.0);
  for (const std::vector<Score>& scores : per_time) {
    if (scores.size() != k) {
      throw ContractViolation("every time step must report all algorithms");
    }
    std::vector<double> ranks = lexicographic_ranks(scores);
    for (std::size_t a = 0; a < k; ++a) report.aggregate[a] += ranks[a];
    report.per_time.push_back(std::move(ranks));
  }
  report.final_rank = average_ranks(report.aggregate);
  report.order.resize(k);
  std::iota(report.order.begin(), report.order.end(), 0);
  std::stable_sort(report.order.begin(), report.order.end(), [&](std::size_t l, std::size_t r) {
    return report.aggregate[l] < report.aggregate[r];
  });
  return report;
}

}  // namespace dcop
