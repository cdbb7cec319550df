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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dcop/constraints.hpp"
#include "dcop/error.hpp"
#include "dcop/rng.hpp"

using namespace dcop;

namespace {

double norm(const std::vector<double>& a) {
  return std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
}

std::vector<double> uniform_normal(std::size_t d) {
  return std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d)));
}

// Brute-force minimum of |x|^2 on {a.x <= b} in the box: the minimizer is
// x(mu) = clamp(-mu a) for the smallest mu >= 0 that reaches a.x = b, and
// a.x(mu) is monotone, so bisection on mu finds it.
double bisection_optimum(const LinearConstraint& c, const BoxBounds& box) {
  auto point = [&](double mu) {
    std::vector<double> x(c.a.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = box.clamp(-mu * c.a[j]);
    return x;
  };
  auto dot = [&](const std::vector<double>& x) {
    return std::inner_product(c.a.begin(), c.a.end(), x.begin(), 0.0);
  };
  if (c.b >= 0) return 0.0;
  double lo = 0, hi = 1e6;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (dot(point(mid)) > c.b) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  auto x = point(hi);
  return std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
}

ScheduleConfig small_config(ChangeMode mode, std::uint64_t seed) {
  ScheduleConfig c;
  c.dimension = 10;
  c.clock = {100, 100, 50};
  c.mode = mode;
  c.constraint_count = mode == ChangeMode::kMulti ? 3 : 1;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("normalize divides by the euclidean norm") {
  auto a = normalize({0.3, 0.4});
  CHECK(a[0] == doctest::Approx(0.6));
  CHECK(a[1] == doctest::Approx(0.8));
  CHECK_THROWS_AS(normalize({0.0, 0.0}), ContractViolation);
}

TEST_CASE("unit normals") {
  Rng rng(1);
  auto one = generate_unit_normal(1, rng);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < 1000; ++i) {
    auto a = generate_unit_normal(30, rng);
    CHECK(std::abs(norm(a) - 1.0) < 1e-12);
    CHECK(std::all_of(a.begin(), a.end(), [](double v) { return v >= 0.0; }));
  }
}

TEST_CASE("translation") {
  LinearConstraint c{{0.6, 0.8}, 2.0};
  CHECK(translate_by(c, -3.5).b == doctest::Approx(-1.5));
  CHECK(translate_by(c, -3.5).a == c.a);

  Rng rng(2);
  SeverityProfile frozen{"frozen", 0.0, 0.0, 2.0};
  for (int i = 0; i < 100; ++i) CHECK(translate(c, frozen, rng).b == 2.0);

  SeverityProfile medium = SeverityProfile::preset("medium");
  CHECK(medium.lk == -15.0);
  CHECK(medium.uk == 15.0);
  CHECK(medium.b0 == 2.0);
  // a consecutive pair of published offsets is one medium step apart
  CHECK(15.68 - 18.90 >= medium.lk);
  for (int i = 0; i < 2000; ++i) {
    const double step = translate(c, medium, rng).b - c.b;
    CHECK(step >= -15.0);
    CHECK(step < 15.0);
  }
}

TEST_CASE("severity presets") {
  CHECK(SeverityProfile::preset("small").uk == 5.0);
  CHECK(SeverityProfile::preset("large").lk == -25.0);
  CHECK_THROWS_AS(SeverityProfile::preset("huge"), ConfigError);
  CHECK_THROWS_AS((SeverityProfile{"x", 1.0, -1.0, 0.0}.validate()), ConfigError);
}

TEST_CASE("rotation permutes coefficients") {
  LinearConstraint c{{0.6, 0.8}, 1.0};
  auto s = swap_coefficients(c, 0, 1);
  CHECK(s.a[0] == 0.8);
  CHECK(s.a[1] == 0.6);
  CHECK(s.b == 1.0);

  Rng rng(4);
  LinearConstraint single{{1.0}, 3.0};
  CHECK(rotate(single, rng) == single);

  LinearConstraint wide{generate_unit_normal(30, rng), -4.0};
  for (int i = 0; i < 500; ++i) {
    auto r = rotate(wide, rng, 1 + i % 3);
    auto x = r.a, y = wide.a;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    CHECK(x == y);
    CHECK(std::abs(norm(r.a) - norm(wide.a)) < 1e-15);
    CHECK(r.b == wide.b);
    if (i % 3 == 0) CHECK(r.a != wide.a);
  }
}

TEST_CASE("change clock") {
  ChangeClock clock{500, 1000, 100};
  CHECK(clock.total_budget() == 51000);
  CHECK(clock.frame_count() == 101);
  CHECK(clock.activation(0) == 0);
  CHECK(clock.activation(1) == 1000);
  CHECK(clock.activation(2) == 1500);
  CHECK(clock.time_index_at(0) == 0);
  CHECK(clock.time_index_at(999) == 0);
  CHECK(clock.time_index_at(1000) == 1);
  CHECK(clock.time_index_at(1499) == 1);
  CHECK(clock.time_index_at(1500) == 2);
  CHECK(clock.time_index_at(51000) == 100);
  CHECK_THROWS_AS((ChangeClock{0, 1000, 10}.validate()), ConfigError);
}

TEST_CASE("translate schedule") {
  ScheduleConfig config;
  config.seed = 9;
  auto s = build_schedule(config);
  REQUIRE(s.frame_count() == 101);
  CHECK(s.frame(0)[0].b == 2.0);
  for (std::size_t t = 0; t < s.frame_count(); ++t) {
    REQUIRE(s.frame(t).size() == 1);
    CHECK(s.frame(t)[0].a == s.frame(0)[0].a);
    if (t > 0) {
      const double step = s.frame(t)[0].b - s.frame(t - 1)[0].b;
      CHECK(step >= -15.0);
      CHECK(step <= 15.0);
    }
  }
  CHECK_THROWS_AS(s.frame(101), ContractViolation);
}

TEST_CASE("multi schedule moves exactly one offset per change") {
  auto s = build_schedule(small_config(ChangeMode::kMulti, 3));
  for (std::size_t t = 1; t < s.frame_count(); ++t) {
    int moved = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(s.frame(t)[k].a == s.frame(t - 1)[k].a);
      if (s.frame(t)[k].b != s.frame(t - 1)[k].b) ++moved;
    }
    CHECK(moved == 1);
  }
  auto bad = small_config(ChangeMode::kTranslate, 3);
  bad.constraint_count = 2;
  CHECK_THROWS_AS(build_schedule(bad), ConfigError);
}

TEST_CASE("combined schedule either rotates or translates") {
  auto s = build_schedule(small_config(ChangeMode::kCombined, 8));
  int rotations = 0, translations = 0;
  for (std::size_t t = 1; t < s.frame_count(); ++t) {
    const auto& prev = s.frame(t - 1)[0];
    const auto& cur = s.frame(t)[0];
    const bool rotated = cur.a != prev.a;
    const bool moved = cur.b != prev.b;
    CHECK(rotated != moved);
    rotations += rotated;
    translations += moved;
  }
  CHECK(rotations > 5);
  CHECK(translations > 5);
}

TEST_CASE("schedules are seed deterministic") {
  for (ChangeMode mode : {ChangeMode::kTranslate, ChangeMode::kCombined, ChangeMode::kMulti}) {
    CHECK(build_schedule(small_config(mode, 21)) == build_schedule(small_config(mode, 21)));
    CHECK_FALSE(build_schedule(small_config(mode, 21)) == build_schedule(small_config(mode, 22)));
  }
}

TEST_CASE("change modes parse with aliases") {
  CHECK(parse_change_mode("translate") == ChangeMode::kTranslate);
  CHECK(parse_change_mode("combined") == ChangeMode::kCombined);
  CHECK(parse_change_mode("translate+rotate") == ChangeMode::kCombined);
  CHECK(parse_change_mode("multi") == ChangeMode::kMulti);
  CHECK(parse_change_mode("multi-translate") == ChangeMode::kMulti);
  CHECK_THROWS_AS(parse_change_mode("spin"), ConfigError);
}

TEST_CASE("satisfies and g") {
  LinearConstraint c{{0.6, 0.8}, 1.0};
  std::vector<double> x{1.0, 0.5};
  CHECK(c.g(x) == doctest::Approx(0.0));
  CHECK(satisfies({c}, x));
  std::vector<double> y{1.0, 0.6};
  CHECK_FALSE(satisfies({c}, y));
}

TEST_CASE("region ratio through the box center is one half") {
  Rng rng(77);
  const auto a = generate_unit_normal(30, rng);
  const double ratio = feasible_region_ratio({{a, 0.0}}, BoxBounds{}, 30, 1000000, rng);
  CHECK(std::abs(ratio - 0.5) <= 0.0015);
}

TEST_CASE("region ratio is one when the top corner is feasible") {
  Rng rng(78);
  const auto a = generate_unit_normal(30, rng);
  const double top = 5.0 * std::accumulate(a.begin(), a.end(), 0.0);
  CHECK(feasible_region_ratio({{a, top}}, BoxBounds{}, 30, 20000, rng) == 1.0);
  CHECK(feasible_region_ratio({{a, -top - 1e-9}}, BoxBounds{}, 30, 20000, rng) == 0.0);
}

TEST_CASE("region ratio is monotone in b under common random numbers") {
  Rng pick(5);
  const auto a = generate_unit_normal(30, pick);
  double previous = -1.0;
  for (double b : {-20.0, -12.0, -6.24, -2.0, 0.0, 3.0, 9.0, 18.9}) {
    Rng rng(123);  // same samples for every b
    const double r = feasible_region_ratio({{a, b}}, BoxBounds{}, 30, 50000, rng);
    CHECK(r >= previous);
    previous = r;
  }
  CHECK(previous > 0.99);
}

TEST_CASE("sphere oracle anchors") {
  const BoxBounds box;
  const auto a = uniform_normal(30);
  CHECK(sphere_optimum_oracle({a, 3.43}, box).value == 0.0);
  CHECK(sphere_optimum_oracle({a, 0.0}, box).value == 0.0);

  const auto mid = sphere_optimum_oracle({a, -13.63}, box);
  CHECK(mid.feasible);
  CHECK(mid.value == doctest::Approx(13.63 * 13.63).epsilon(1e-12));
  CHECK(std::abs(mid.value - 184.99) / 184.99 < 0.01);

  const auto far = sphere_optimum_oracle({a, -37.95}, box);
  CHECK_FALSE(far.feasible);
  CHECK(far.value == doctest::Approx(750.0).epsilon(1e-12));
}

TEST_CASE("sphere oracle agrees with bisection on random frames") {
  Rng rng(2024);
  const BoxBounds box;
  for (std::size_t d : {1u, 2u, 3u, 30u}) {
    for (int i = 0; i < 300; ++i) {
      LinearConstraint c{generate_unit_normal(d, rng), rng.uniform(-40.0, 20.0)};
      const auto o = sphere_optimum_oracle(c, box);
      CHECK(o.point.size() == d);
      if (!o.feasible) {
        // infeasible: the corner is the least-violating point
        CHECK(c.g(o.point) > 0.0);
        continue;
      }
      CHECK(c.g(o.point) <= 1e-9);
      CHECK(box.contains(o.point));
      CHECK(o.value == doctest::Approx(bisection_optimum(c, box)).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("sphere oracle is not beaten by a grid search in two dimensions") {
  Rng rng(31);
  const BoxBounds box;
  for (int i = 0; i < 20; ++i) {
    LinearConstraint c{generate_unit_normal(2, rng), rng.uniform(-7.0, 1.0)};
    const auto o = sphere_optimum_oracle(c, box);
    if (!o.feasible) continue;
    double best = 1e300;
    const int n = 400;
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; q <= n; ++q) {
        std::vector<double> x{-5.0 + 10.0 * p / n, -5.0 + 10.0 * q / n};
        if (c.g(x) <= 0) best = std::min(best, x[0] * x[0] + x[1] * x[1]);
      }
    }
    CHECK(o.value <= best + 1e-12);
    CHECK(best - o.value < 0.5);  // grid spacing 0.025
  }
}
