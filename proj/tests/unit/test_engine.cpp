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
#include <memory>
#include <vector>

#include "dcop/engine.hpp"
#include "dcop/error.hpp"
#include "dcop/violation.hpp"

using namespace dcop;

namespace {

std::shared_ptr<const ConstraintSchedule> make_schedule(std::int64_t tau, std::int64_t buffer,
                                                        std::int64_t changes,
                                                        std::size_t dim = 30,
                                                        SeverityProfile sev = {},
                                                        std::uint64_t seed = 1) {
  ScheduleConfig c;
  c.dimension = dim;
  c.clock = {tau, buffer, changes};
  c.severity = sev;
  c.seed = seed;
  return std::make_shared<const ConstraintSchedule>(build_schedule(c));
}

Population line_population(std::size_t n) {
  Population p(n);
  for (std::size_t i = 0; i < n; ++i) p[i].x = {static_cast<double>(i)};
  return p;
}

}  // namespace

TEST_CASE("difference mutant") {
  std::vector<double> base{1.0}, x1{3.0}, x2{2.0};
  CHECK(difference_mutant(base, x1, x2, 0.5)[0] == doctest::Approx(1.5));
  CHECK(difference_mutant(base, x1, x2, 0.0)[0] == 1.0);
  CHECK(difference_mutant(base, x1, x1, 0.7)[0] == 1.0);
}

TEST_CASE("mutate draws three distinct donors other than the target") {
  Rng rng(6);
  Population pop = line_population(4);
  for (int i = 0; i < 500; ++i) {
    // With F = 0 the mutant is the base vector, which must not be the target.
    auto m = mutate(pop, 2, 0.0, rng);
    CHECK(m[0] != 2.0);
  }
  // Identical members give a zero difference for any F.
  Population same(5);
  for (auto& ind : same) ind.x = {4.0, -1.0};
  auto m = mutate(same, 0, 0.8, rng);
  CHECK(m[0] == 4.0);
  CHECK(m[1] == -1.0);
  CHECK_THROWS_AS(mutate(line_population(3), 0, 0.5, rng), ContractViolation);
}

TEST_CASE("binomial crossover") {
  std::vector<double> target{1.0, 1.0}, mutant{2.0, 2.0};
  std::vector<double> draws{0.5, 0.5};
  auto t = binomial_crossover(target, mutant, 0.0, 1, draws);
  CHECK(t == std::vector<double>{1.0, 2.0});
  auto all = binomial_crossover(target, mutant, 1.0, 0, draws);
  CHECK(all == mutant);

  Rng rng(7);
  const BoxBounds box;
  std::vector<double> tgt(10, 0.0), mut(10, 9.0);
  for (int i = 0; i < 100; ++i) {
    auto trial = crossover(tgt, mut, 0.0, box, rng);
    int changed = 0;
    for (double v : trial) changed += v != 0.0;
    CHECK(changed == 1);
    // mutant coordinate 9 is clamped to the upper bound
    for (double v : trial) CHECK((v == 0.0 || v == 5.0));
  }
  auto full = crossover(tgt, mut, 1.0, box, rng);
  CHECK(full == std::vector<double>(10, 5.0));
}

TEST_CASE("crossover takes 1 + (D - 1) CR mutant genes on average") {
  Rng rng(8);
  const BoxBounds box{-100.0, 100.0};
  const std::size_t d = 30;
  const double cr = 0.2;
  std::vector<double> target(d, 0.0), mutant(d, 1.0);
  const int trials = 10000;
  double total = 0.0;
  for (int i = 0; i < trials; ++i) {
    for (double v : crossover(target, mutant, cr, box, rng)) total += v;
  }
  const double mean = total / trials;
  const double expected = 1.0 + (d - 1) * cr;
  const double sigma = std::sqrt((d - 1) * cr * (1 - cr) / trials);
  CHECK(std::abs(mean - expected) <= 3 * sigma);
}

TEST_CASE("change detection") {
  ObjectiveFunction sphere(ObjectiveKind::kSphere, 2);
  ConstraintSet frame{{{0.6, 0.8}, 1.0}};
  Individual a = evaluate_individual({1.0, 1.0}, sphere, frame, 0);
  Individual b = evaluate_individual({-1.0, 0.0}, sphere, frame, 0);
  CHECK_FALSE(detect_change(a, b, frame, sphere));

  ConstraintSet shifted{{{0.6, 0.8}, 0.5}};
  CHECK(detect_change(a, b, shifted, sphere));

  // rotation: f unchanged, phi changes at a
  Individual c = evaluate_individual({2.0, 0.0}, sphere, frame, 0);
  ConstraintSet rotated{{{0.8, 0.6}, 1.0}};
  CHECK(detect_change(c, b, rotated, sphere));

  // a change that leaves both sentinels satisfied goes unnoticed
  ConstraintSet loose{{{0.6, 0.8}, 40.0}};
  ConstraintSet looser{{{0.6, 0.8}, 45.0}};
  Individual d = evaluate_individual({0.0, 0.0}, sphere, loose, 0);
  Individual e = evaluate_individual({1.0, 0.0}, sphere, loose, 0);
  CHECK_FALSE(detect_change(d, e, looser, sphere));
}

TEST_CASE("engine configuration checks") {
  auto sched = make_schedule(1000, 1000, 2);
  DcopInstance inst{ObjectiveFunction(ObjectiveKind::kSphere, 30), sched};
  CHECK_THROWS_AS(Engine(inst, HandlerKind::kFeasibility, DEConfig{3, 0.2, 0.2, 0.8}, 1),
                  ConfigError);
  CHECK_THROWS_AS(Engine(inst, HandlerKind::kFeasibility, DEConfig{30, 0.2, 0.2, 0.8}, 1),
                  ConfigError);
  CHECK_THROWS_AS(Engine(inst, HandlerKind::kFeasibility, DEConfig{20, 1.5, 0.2, 0.8}, 1),
                  ConfigError);
  DcopInstance wrong{ObjectiveFunction(ObjectiveKind::kSphere, 10), sched};
  CHECK_THROWS_AS(Engine(wrong, HandlerKind::kFeasibility, DEConfig{}, 1), ConfigError);
}

TEST_CASE("reaction re-initializes the whole population") {
  auto sched = make_schedule(1000, 1000, 5);
  DcopInstance inst{ObjectiveFunction(ObjectiveKind::kSphere, 30), sched};
  Engine one(inst, HandlerKind::kEpsilon, DEConfig{}, 42);
  Engine two(inst, HandlerKind::kEpsilon, DEConfig{}, 42);
  for (int g = 0; g < 10; ++g) {
    one.step();
    two.step();
  }
  const Population before = one.population();
  one.react_to_change(3);
  two.react_to_change(3);
  REQUIRE(one.population().size() == 20);
  for (std::size_t i = 0; i < 20; ++i) {
    const Individual& ind = one.population()[i];
    CHECK(ind.evaluated_at == 3);
    CHECK(ind.x != before[i].x);
    CHECK(ind.phi == doctest::Approx(sum_violation(ind.x, sched->frame(3))));
    CHECK(ind.x == two.population()[i].x);
  }
  CHECK(one.detections() == 1);
}

TEST_CASE("budget accounting") {
  for (auto [tau, gens] : {std::pair<std::int64_t, std::int64_t>{1000, 5050}, {500, 2550}}) {
    auto sched = make_schedule(tau, 1000, 100);
    DcopInstance inst{ObjectiveFunction(ObjectiveKind::kSphere, 30), sched};
    Engine engine(inst, HandlerKind::kFeasibility, DEConfig{}, 5);
    std::int64_t last = 0;
    std::int64_t generations = 0;
    while (!engine.finished()) {
      engine.step();
      CHECK(engine.evaluations() - last == 20);
      CHECK(engine.population().size() == 20);
      last = engine.evaluations();
      ++generations;
    }
    CHECK(engine.evaluations() == 1000 + 100 * tau);
    CHECK(generations == gens);
    CHECK_THROWS_AS(engine.step(), ContractViolation);
  }
}

TEST_CASE("trace layout") {
  auto sched = make_schedule(200, 400, 4);
  DcopInstance inst{ObjectiveFunction(ObjectiveKind::kRastrigin, 30), sched};
  RunTrace trace = run(inst, HandlerKind::kPenalty, DEConfig{}, 9);
  CHECK(trace.evaluations == 1200);
  REQUIRE(trace.rows.size() == 60);
  REQUIRE(trace.period_best.size() == 5);
  for (std::size_t t = 0; t < 5; ++t) CHECK(trace.period_best[t].time == t);
  // the first 20 generations see frame 0, then 10 per frame
  CHECK(trace.rows[19].time == 0);
  CHECK(trace.rows[20].time == 1);
  CHECK(trace.rows[59].time == 4);
  for (const TraceRow& row : trace.rows) {
    CHECK(row.best_phi >= 0.0);
    CHECK(row.worst_f >= row.best_f);  // worst is the largest f in the population
  }
}

TEST_CASE("members stay inside the box") {
  SeverityProfile big{"big", -25.0, 25.0, 2.0};
  auto sched = make_schedule(200, 200, 20, 30, big, 4);
  DcopInstance inst{ObjectiveFunction(ObjectiveKind::kAckley, 30), sched};
  Engine engine(inst, HandlerKind::kEpsilon, DEConfig{}, 13);
  while (!engine.finished()) {
    engine.step();
    for (const Individual& ind : engine.population()) CHECK(sched->bounds().contains(ind.x));
  }
}

TEST_CASE("static sphere converges") {
  SeverityProfile frozen{"static", 0.0, 0.0, 2.0};
  auto sched = make_schedule(1000, 1000, 19, 30, frozen);
  DcopInstance inst{ObjectiveFunction(ObjectiveKind::kSphere, 30), sched};
  Engine engine(inst, HandlerKind::kFeasibility, DEConfig{}, 3);
  double previous = 1e300;
  std::int64_t generations = 0;
  while (!engine.finished()) {
    const TraceRow row = engine.step();
    ++generations;
    CHECK(row.best_phi == 0.0);
    CHECK(row.best_f <= previous);
    previous = row.best_f;
  }
  CHECK(generations == 1000);
  CHECK(previous < 1e-3);
  CHECK(engine.detections() == 0);
}

TEST_CASE("runs are reproducible from the seed") {
  auto sched = make_schedule(500, 1000, 10);
  DcopInstance inst{ObjectiveFunction(ObjectiveKind::kRosenbrock, 30), sched};
  for (HandlerKind h : {HandlerKind::kFeasibility, HandlerKind::kPenalty, HandlerKind::kEpsilon}) {
    RunTrace a = run(inst, h, DEConfig{}, 77);
    RunTrace b = run(inst, h, DEConfig{}, 77);
    RunTrace c = run(inst, h, DEConfig{}, 78);
    REQUIRE(a.rows.size() == b.rows.size());
    bool same = true, differs = false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      same = same && a.rows[i].best_f == b.rows[i].best_f &&
             a.rows[i].best_phi == b.rows[i].best_phi && a.rows[i].worst_f == b.rows[i].worst_f;
      differs = differs || a.rows[i].best_f != c.rows[i].best_f;
    }
    CHECK(same);
    CHECK(differs);
    CHECK(a.detections == b.detections);
  }
}
