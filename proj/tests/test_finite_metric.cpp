// Copyright 2026 The kappa-majorize Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "km/finite_metric.hpp"

#include <random>

#include <doctest.h>

#include "km/conditions.hpp"

using namespace km;

namespace {

// 4-cycle graph metric: edges 1, opposite corners 2.
FiniteMetric four_cycle() {
  FiniteMetric m(4);
  m.set(0, 1, 1);
  m.set(1, 2, 1);
  m.set(2, 3, 1);
  m.set(3, 0, 1);
  m.set(0, 2, 2);
  m.set(1, 3, 2);
  return m;
}

}  // namespace

TEST_CASE("validate accepts the 4-cycle metric and a single point") {
  CHECK_FALSE(validate(four_cycle()));
  CHECK_FALSE(validate(FiniteMetric(1)));
}

TEST_CASE("validate reports a triangle violation with its witness") {
  FiniteMetric m(3);
  m.set(0, 1, 1);
  m.set(1, 2, 1);
  m.set(0, 2, 5);
  auto v = validate(m);
  REQUIRE(v.has_value());
  CHECK(v->kind == MetricViolation::Kind::Triangle);
  CHECK(v->magnitude == doctest::Approx(3.0));
}

TEST_CASE("validate reports asymmetry and negative entries") {
  FiniteMetric m(2);
  m.set(0, 1, 1.0);
  // Poke an asymmetric cell through the raw constructor.
  std::vector<double> raw = m.raw();
  raw[1] = 2.0;
  FiniteMetric bad(2, std::move(raw));
  auto v = validate(bad);
  REQUIRE(v.has_value());
  CHECK(v->kind == MetricViolation::Kind::Symmetry);

  FiniteMetric neg(2);
  neg.set(0, 1, -1.0);
  auto nv = validate(neg);
  REQUIRE(nv.has_value());
  CHECK(nv->kind == MetricViolation::Kind::NegativeEntry);
}

TEST_CASE("snowflake anchors") {
  FiniteMetric m(2);
  m.set(0, 1, 4.0);
  CHECK(snowflake(m, 0.5)(0, 1) == doctest::Approx(2.0));
  CHECK(snowflake(m, 1.0)(0, 1) == doctest::Approx(4.0));
  CHECK_THROWS_AS(snowflake(m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(snowflake(m, 1.5), std::invalid_argument);
}

TEST_CASE("snowflake keeps metrics valid and Cycl_4(0)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteMetric m(8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = i + 1; j < 8; ++j) m.set(i, j, u(rng));
    REQUIRE_FALSE(validate(m));
    FiniteMetric half = snowflake(m, 0.5);
    CHECK_FALSE(validate(half));
    CHECK_FALSE(cycl4_check(half, Kappa(0.0)).failed());
  }
}

TEST_CASE("perimeter anchors") {
  FiniteMetric m = four_cycle();
  CHECK(perimeter(m, CyclicTuple{{0, 1, 2, 3}}) == doctest::Approx(4.0));
  CHECK(perimeter(m, CyclicTuple{{2}}) == 0.0);
  CHECK(perimeter(m, CyclicTuple{{0, 2, 1, 3}}) == doctest::Approx(6.0));
}

TEST_CASE("dedupe_consecutive collapses runs and records them") {
  // Metric where 0 == 1 and 2 == 3 (distance zero), 4 separate.
  FiniteMetric m(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) m.set(i, j, 1.0);
  m.set(0, 1, 0.0);
  m.set(2, 3, 0.0);
  REQUIRE_FALSE(validate(m));

  DedupeResult dd = dedupe_consecutive(m, CyclicTuple{{0, 1, 2, 3, 4}});
  CHECK(dd.tuple.indices == std::vector<std::size_t>{0, 2, 4});
  CHECK(dd.run_lengths == std::vector<std::size_t>{2, 2, 1});
  CHECK(dd.start == 0);
  auto pos = dd.position_map(5);
  CHECK(pos == std::vector<std::size_t>{0, 0, 1, 1, 2});
}

TEST_CASE("dedupe_consecutive handles wrap-around runs") {
  FiniteMetric m(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) m.set(i, j, 1.0);
  m.set(0, 3, 0.0);  // last and first coincide
  DedupeResult dd = dedupe_consecutive(m, CyclicTuple{{0, 1, 2, 3}});
  CHECK(dd.start == 1);
  CHECK(dd.tuple.indices == std::vector<std::size_t>{1, 2, 3});
  CHECK(dd.run_lengths == std::vector<std::size_t>{1, 1, 2});
}

TEST_CASE("dedupe_consecutive: constant tuple collapses to one point") {
  FiniteMetric m(3);
  m.set(0, 1, 1.0);
  m.set(0, 2, 1.0);
  m.set(1, 2, 1.0);
  DedupeResult dd = dedupe_consecutive(m, CyclicTuple{{2, 2, 2, 2}});
  CHECK(dd.tuple.indices == std::vector<std::size_t>{2});
  CHECK(dd.run_lengths == std::vector<std::size_t>{4});
}

TEST_CASE("dedupe is the identity on tuples without zero edges") {
  FiniteMetric m = sample_model_subset(6, Kappa(0.0), 3).first;
  CyclicTuple t{{5, 2, 0, 4, 1, 3}};
  DedupeResult dd = dedupe_consecutive(m, t);
  CHECK(dd.tuple.indices == t.indices);
  CHECK(dd.start == 0);
  for (std::size_t r : dd.run_lengths) CHECK(r == 1);
}

TEST_CASE("sample_model_subset: validity, determinism, hemisphere bound") {
  for (double kv : {-1.0, 0.0, 1.0}) {
    Kappa k(kv);
    auto [m, pts] = sample_model_subset(6, k, 42);
    CHECK(m.size() == 6);
    CHECK(pts.size() == 6);
    CHECK_FALSE(validate(m));
    // Ground truth points realize the matrix.
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        CHECK(m(i, j) == doctest::Approx(distance(pts[i], pts[j])));
    auto [m2, pts2] = sample_model_subset(6, k, 42);
    CHECK(m.raw() == m2.raw());
    auto [m3, pts3] = sample_model_subset(6, k, 43);
    CHECK(m.raw() != m3.raw());
    CHECK_FALSE(cycl4_check(m, k).failed());
  }
  // kappa > 0: all pairwise distances well below the diameter.
  auto [m, pts] = sample_model_subset(6, Kappa(1.0), 7);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(m(i, j) < 3.14159265358979323846);
}
