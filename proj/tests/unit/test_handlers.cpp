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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "dcop/error.hpp"
#include "dcop/handlers.hpp"
#include "dcop/rng.hpp"

using namespace dcop;

namespace {

// Scores on a coarse grid so that ties and feasible members are common.
Score random_score(Rng& rng) {
  const double f = static_cast<double>(rng.index(6));
  const double phi = rng.uniform() < 0.4 ? 0.0 : 0.25 * static_cast<double>(rng.index(5));
  return {f, phi};
}

bool first_wins(Winner w) { return w == Winner::kFirst; }

}  // namespace

TEST_CASE("feasibility rules") {
  CHECK(feasibility_compare({1, 0}, {2, 0}) == Winner::kFirst);
  CHECK(feasibility_compare({5, 0}, {1, 0.1}) == Winner::kFirst);
  CHECK(feasibility_compare({1, 2}, {9, 1}) == Winner::kSecond);
  CHECK(feasibility_compare({2, 0}, {1, 0}) == Winner::kSecond);
  // ties keep the first (the target)
  CHECK(feasibility_compare({3, 0}, {3, 0}) == Winner::kFirst);
  CHECK(feasibility_compare({3, 1}, {0, 1}) == Winner::kFirst);
}

TEST_CASE("epsilon comparison") {
  CHECK(epsilon_compare({3, 0.2}, {4, 0.4}, 0.5) == Winner::kFirst);
  CHECK(epsilon_compare({10, 0.2}, {1, 0.6}, 0.5) == Winner::kFirst);
  CHECK(epsilon_compare({10, 0.2}, {1, 0.4}, 0.5) == Winner::kSecond);
  CHECK(epsilon_compare({1, 0.7}, {10, 0.6}, 0.5) == Winner::kSecond);
}

TEST_CASE("comparators are total and transitive") {
  Rng rng(10);
  for (double eps : {-1.0, 0.0, 0.3}) {
    auto better_or_equal = [&](const Score& a, const Score& b) {
      return first_wins(eps < 0 ? feasibility_compare(a, b) : epsilon_compare(a, b, eps));
    };
    for (int i = 0; i < 10000; ++i) {
      const Score a = random_score(rng), b = random_score(rng), c = random_score(rng);
      CHECK((better_or_equal(a, b) || better_or_equal(b, a)));
      if (better_or_equal(a, b) && better_or_equal(b, c)) CHECK(better_or_equal(a, c));
    }
  }
}

TEST_CASE("epsilon zero is the feasibility rule") {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    Score a = random_score(rng), b = random_score(rng);
    if (i % 2) {
      a.f = rng.uniform(-5, 5);
      b.phi = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
    }
    CHECK(epsilon_compare(a, b, 0.0) == feasibility_compare(a, b));
  }
}

TEST_CASE("infinite epsilon orders by objective") {
  Rng rng(12);
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const Score a{rng.uniform(), rng.uniform(0, 100)}, b{rng.uniform(), rng.uniform(0, 100)};
    CHECK(epsilon_compare(a, b, inf) == (b.f < a.f ? Winner::kSecond : Winner::kFirst));
  }
}

TEST_CASE("population statistics") {
  std::vector<Score> s{{1, 0}, {5, 2}, {3, 0}, {-2, 4}};
  auto st = PopulationStats::of(s);
  CHECK(st.count == 4);
  CHECK(st.feasible == 2);
  CHECK(st.f_min == -2);
  CHECK(st.f_max == 5);
  CHECK(st.phi_max == 4);
  CHECK(st.feasible_ratio() == 0.5);
  auto more = st.with({9, 0});
  CHECK(more.count == 5);
  CHECK(more.f_max == 9);
  CHECK(more.feasible_ratio() == doctest::Approx(0.6));
}

TEST_CASE("penalty fitness by hand") {
  // f in [0, 10], phi_max = 2, rf = 1/2
  std::vector<Score> s{{0, 0}, {10, 0}, {4, 1}, {6, 2}};
  auto fit = penalty_fitness(s);
  CHECK(fit[0] == doctest::Approx(0.0));
  CHECK(fit[1] == doctest::Approx(1.0));
  // f^ = 0.4, v = 0.5: sqrt(0.16 + 0.25) + 0.5 * 0.5 + 0.5 * 0.4
  CHECK(fit[2] == doctest::Approx(std::sqrt(0.41) + 0.25 + 0.2));
  // f^ = 0.6, v = 1
  CHECK(fit[3] == doctest::Approx(std::sqrt(1.36) + 0.5 + 0.3));
}

TEST_CASE("penalty fitness orderings") {
  SUBCASE("all feasible follows the objective") {
    std::vector<Score> s{{3, 0}, {1, 0}, {7, 0}, {2, 0}};
    auto fit = penalty_fitness(s);
    CHECK(fit[1] < fit[3]);
    CHECK(fit[3] < fit[0]);
    CHECK(fit[0] < fit[2]);
  }
  SUBCASE("equal objective follows the violation") {
    std::vector<Score> s{{4, 3}, {4, 1}, {4, 2}};
    auto fit = penalty_fitness(s);
    CHECK(fit[1] < fit[2]);
    CHECK(fit[2] < fit[0]);
  }
  SUBCASE("no feasible member: fitness is the normalized violation") {
    std::vector<Score> s{{9, 1}, {1, 4}, {5, 2}};
    auto fit = penalty_fitness(s);
    CHECK(fit[0] == doctest::Approx(0.25));
    CHECK(fit[1] == doctest::Approx(1.0));
    CHECK(fit[2] == doctest::Approx(0.5));
  }
}

TEST_CASE("penalty fitness is invariant under affine objective rescaling") {
  Rng rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Score> s(20), t(20);
    const double alpha = rng.uniform(0.1, 50), beta = rng.uniform(-100, 100);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = {rng.uniform(0, 300), rng.uniform() < 0.3 ? 0.0 : rng.uniform(0, 10)};
      t[i] = {alpha * s[i].f + beta, s[i].phi};
    }
    auto a = penalty_fitness(s), b = penalty_fitness(t);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
  }
}

TEST_CASE("best feasible member survives infeasible trials") {
  Rng rng(14);
  auto feas = make_handler(HandlerKind::kFeasibility);
  auto pen = make_handler(HandlerKind::kPenalty);
  auto eps = make_handler(HandlerKind::kEpsilon);
  for (int rep = 0; rep < 2000; ++rep) {
    std::vector<Score> pop(20);
    for (auto& s : pop) s = {rng.uniform(0, 100), rng.uniform() < 0.5 ? 0.0 : rng.uniform(0, 5)};
    pop[3].phi = 0.0;
    std::size_t best = 3;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (pop[i].phi == 0.0 && pop[i].f < pop[best].f) best = i;
    }
    const Score trial{rng.uniform(-50, 100), rng.uniform(1e-6, 5)};

    feas->begin_generation(pop);
    CHECK_FALSE(feas->prefer_trial(pop[best], trial));

    // The penalty keeps it whenever it also holds the lowest objective of
    // the duel statistics, so its normalized objective is zero.
    pen->begin_generation(pop);
    const PopulationStats joint = PopulationStats::of(pop).with(trial);
    if (joint.f_min == pop[best].f) CHECK_FALSE(pen->prefer_trial(pop[best], trial));

    // The epsilon level admits infeasible trials only up to the level.
    eps->reset(pop, 50);
    for (int g = 0; g < 10; ++g) eps->end_generation();
    eps->begin_generation(pop);
    CHECK_FALSE(eps->prefer_trial(pop[best], trial));
  }
}

TEST_CASE("penalty trades a little violation for a much lower objective") {
  // Feasible best at f = 50 while an infeasible member sits at f = 0: an
  // infeasible trial with f = 0 and a tiny violation scores better.
  std::vector<Score> pop(20, Score{80.0, 0.0});
  pop[0] = {50.0, 0.0};
  pop[1] = {0.0, 4.0};
  auto pen = make_handler(HandlerKind::kPenalty);
  pen->begin_generation(pop);
  CHECK(pen->prefer_trial(pop[0], {0.0, 0.01}));
}

TEST_CASE("epsilon reset") {
  std::vector<Score> pop(20);
  for (std::size_t i = 0; i < pop.size(); ++i) pop[i] = {0.0, static_cast<double>(20 - i)};
  // phis sorted: 1, 2, 3, 4, ... and theta = ceil(0.2 * 20) = 4
  auto st = epsilon_reset(pop, 50);
  CHECK(st.epsilon0 == 4.0);
  CHECK(st.tc == 10);
  CHECK(st.cp == 5.0);
  CHECK(st.level() == 4.0);
  st.generations_since_reset = 5;
  CHECK(st.level() == doctest::Approx(4.0 * std::pow(0.5, 5)));
  st.generations_since_reset = 10;
  CHECK(st.level() == 0.0);
  st.advance();
  CHECK(st.level() == 0.0);

  std::vector<Score> feasible(20, Score{1.0, 0.0});
  CHECK(epsilon_reset(feasible, 50).epsilon0 == 0.0);
  CHECK_THROWS_AS(epsilon_reset(std::vector<Score>{}, 50), ContractViolation);
}

TEST_CASE("epsilon handler relaxes then tightens") {
  auto h = make_handler(HandlerKind::kEpsilon);
  std::vector<Score> pop(20);
  for (std::size_t i = 0; i < pop.size(); ++i) pop[i] = {0.0, static_cast<double>(i + 1)};
  h->reset(pop, 50);  // eps0 = 4, Tc = 10
  h->begin_generation(pop);
  CHECK(h->prefer_trial({5, 0}, {1, 3}));  // both under eps: objective decides
  for (int g = 0; g < 10; ++g) {
    h->end_generation();
    h->begin_generation(pop);
  }
  CHECK_FALSE(h->prefer_trial({5, 0}, {1, 3}));  // eps is now 0
}

TEST_CASE("handler factory and names") {
  for (HandlerKind k : {HandlerKind::kFeasibility, HandlerKind::kPenalty, HandlerKind::kEpsilon}) {
    CHECK(make_handler(k)->kind() == k);
    CHECK(parse_handler_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_handler_kind("repair"), ConfigError);
  auto f = make_handler(HandlerKind::kFeasibility);
  CHECK_FALSE(f->prefer_trial({1, 0}, {1, 0}));  // ties keep the target
  CHECK(f->prefer_trial({1, 0}, {0.5, 0}));
}
