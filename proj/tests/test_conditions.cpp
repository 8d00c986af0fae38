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

#include "km/conditions.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "km/oracle.hpp"

using namespace km;

namespace {

constexpr double kPi = 3.14159265358979323846;

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

FiniteMetric unit_square() {
  FiniteMetric m(4);
  double d = std::sqrt(2.0);
  m.set(0, 1, 1);
  m.set(1, 2, 1);
  m.set(2, 3, 1);
  m.set(3, 0, 1);
  m.set(0, 2, d);
  m.set(1, 3, d);
  return m;
}

FiniteMetric from_points(const std::vector<std::array<double, 2>>& pts) {
  FiniteMetric m(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      m.set(i, j, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
  return m;
}

FiniteMetric random_unit_band_metric(std::size_t n, std::mt19937_64& rng) {
  // Entries in [1, 2): every triple satisfies the triangle inequality, and
  // the family still contains comparison-condition failures.
  std::uniform_real_distribution<double> u(1.0, 2.0);
  FiniteMetric m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, u(rng));
  return m;
}

}  // namespace

TEST_CASE("wir_value: parallelogram identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    double ax = u(rng), ay = u(rng), bx = u(rng), by = u(rng);
    std::vector<std::array<double, 2>> pts = {
        {0, 0}, {ax, ay}, {ax + bx, ay + by}, {bx, by}};
    FiniteMetric m = from_points(pts);
    CHECK(std::fabs(wir_value(m, CyclicTuple{{0, 1, 2, 3}}, 2)) <= 1e-9);
  }
}

TEST_CASE("wir_value: 4-cycle metric is far from Wir_4") {
  CHECK(wir_value(four_cycle(), CyclicTuple{{0, 1, 2, 3}}, 2) ==
        doctest::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("wir_value: regular pentagon vanishes at j = 2") {
  double side = 1.3;
  double diag = 2.0 * std::cos(kPi / 5.0) * side;
  FiniteMetric m(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) {
      std::size_t gap = std::min(j - i, 5 - (j - i));
      m.set(i, j, gap == 1 ? side : diag);
    }
  CHECK(std::fabs(wir_value(m, CyclicTuple{{0, 1, 2, 3, 4}}, 2)) <= 1e-9);
}

TEST_CASE("wir_check: planar samples pass, the 4-cycle fails with witness") {
  auto [planar, pts] = sample_model_subset(6, Kappa(0.0), 17);
  for (std::size_t n : {4, 5, 6}) CHECK_FALSE(wir_check(planar, n).failed());

  ConditionReport r = wir_check(four_cycle(), 4);
  CHECK(r.failed());
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->margin == doctest::Approx(-4.0));
  CHECK(r.witness->params.at("j") == 2);
}

TEST_CASE("wir_check: all-maps mode on a planar triple") {
  auto [planar, pts] = sample_model_subset(3, Kappa(0.0), 23);
  CHECK_FALSE(wir_check(planar, 4, WirMode::AllMaps).failed());
}

TEST_CASE("wir_check enforces its enumeration budget") {
  auto [planar, pts] = sample_model_subset(8, Kappa(0.0), 29);
  CHECK_THROWS_AS(wir_check(planar, 8, WirMode::AllMaps, 1000),
                  std::runtime_error);
}

TEST_CASE("boxtimes_value anchors") {
  // Unit square at the Wir point.
  CHECK(boxtimes_value(1, 1, 1, 1, std::sqrt(2.0), std::sqrt(2.0), 0.5, 0.5) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(boxtimes_value(1, 1, 1, 1, 2, 2, 0.5, 0.5) == doctest::Approx(-1.0));
  CHECK(boxtimes_value(0.7, 1, 1, 1, 1, 1, 0.0, 0.0) ==
        doctest::Approx(0.49));
}

TEST_CASE("boxtimes_min anchors") {
  BoxtimesMin sq = boxtimes_min(1, 1, 1, 1, std::sqrt(2.0), std::sqrt(2.0));
  CHECK(sq.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sq.s == doctest::Approx(0.5));
  CHECK(sq.t == doctest::Approx(0.5));

  BoxtimesMin cyc = boxtimes_min(1, 1, 1, 1, 2, 2);
  CHECK(cyc.value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(cyc.s == doctest::Approx(0.5));
  CHECK(cyc.t == doctest::Approx(0.5));

  // Degenerate diagonals leave no negative term: with x = z and y = w all
  // four edges coincide and the form is constantly that edge squared.
  BoxtimesMin zero = boxtimes_min(1, 1, 1, 1, 0, 0);
  CHECK(zero.value == doctest::Approx(1.0));
  CHECK(boxtimes_min(0, 0, 0, 0, 0, 0).value == doctest::Approx(0.0));
}

TEST_CASE("boxtimes_min matches a fine grid scan") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    double a = u(rng), b = u(rng), c = u(rng), e = u(rng), f = u(rng),
           g = u(rng);
    double exact = boxtimes_min(a, b, c, e, f, g).value;
    double grid = boxtimes_grid_min(a, b, c, e, f, g, 128);
    double h = 1.0 / 127.0;
    double bound = h * h * (f * f + g * g +
                            std::fabs(a * a - b * b + c * c - e * e)) +
                   1e-12;
    CHECK(exact <= grid + 1e-12);
    CHECK(grid - exact <= bound);
  }
}

TEST_CASE("boxtimes_check: verdicts and the 4-cycle witness") {
  auto [planar, pts] = sample_model_subset(7, Kappa(0.0), 41);
  CHECK_FALSE(boxtimes_check(planar).failed());

  ConditionReport r = boxtimes_check(four_cycle());
  CHECK(r.failed());
  CHECK(r.worst_margin == doctest::Approx(-1.0).epsilon(1e-12));
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->params.at("s") == doctest::Approx(0.5));
  CHECK(r.witness->params.at("t") == doctest::Approx(0.5));
}

TEST_CASE("quadruple_check: square self-comparison passes") {
  QuadrupleLabeling q = QuadrupleLabeling::from_metric(unit_square(), 0, 1, 2, 3);
  ConditionReport r = quadruple_check(q, Kappa(0.0));
  CHECK_FALSE(r.failed());
  REQUIRE(r.witness.has_value() == false);
  CHECK(r.worst_margin == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("quadruple_check: 4-cycle folds flat and fails by 2") {
  QuadrupleLabeling q = QuadrupleLabeling::from_metric(four_cycle(), 0, 1, 2, 3);
  ConditionReport r = quadruple_check(q, Kappa(0.0));
  CHECK(r.failed());
  CHECK(r.worst_margin == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("quadruple_check: zero diagonal reduces to the triangle bound") {
  FiniteMetric m(3);
  m.set(0, 1, 1.0);
  m.set(0, 2, 1.2);
  m.set(1, 2, 0.8);
  // Labeling x = z = point 0: f = 0, bound d(y,w) <= d(y,x) + d(x,w).
  QuadrupleLabeling q;
  q.x = 0; q.y = 1; q.z = 0; q.w = 2;
  q.xy = m(0, 1); q.yz = m(1, 0); q.zw = m(0, 2); q.wx = m(2, 0);
  q.xz = 0.0; q.yw = m(1, 2);
  ConditionReport r = quadruple_check(q, Kappa(0.0));
  CHECK_FALSE(r.failed());
  CHECK(r.worst_margin == doctest::Approx(1.0 + 1.2 - 0.8));
}

TEST_CASE("quadruple_check: perimeter exemption for positive curvature") {
  QuadrupleLabeling q = QuadrupleLabeling::from_metric(four_cycle(), 0, 1, 2, 3);
  // 2 * diameter = 2 pi / sqrt(kappa); kappa = 12 gives 2D < 4 = perimeter.
  ConditionReport r = quadruple_check(q, Kappa(12.0));
  CHECK(r.verdict == Verdict::Exempt);
}

TEST_CASE("cat4_check: model samples pass, the 4-cycle fails, triples are vacuous") {
  for (double kv : {-1.0, 0.0, 1.0}) {
    auto [m, pts] = sample_model_subset(5, Kappa(kv), 53);
    CHECK_FALSE(cat4_check(m, Kappa(kv)).failed());
  }
  CHECK(cat4_check(four_cycle(), Kappa(0.0)).failed());
  auto [triple, pts] = sample_model_subset(3, Kappa(0.0), 59);
  ConditionReport r = cat4_check(triple, Kappa(0.0));
  CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("cat4_check is labeling-consistent under reversal and role swap") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteMetric m = random_unit_band_metric(4, rng);
    ConditionReport direct = cat4_check(m, Kappa(0.0));
    // Reverse the cyclic orientation of the point set: relabel 0123->0321.
    FiniteMetric rev(4);
    std::array<std::size_t, 4> perm = {0, 3, 2, 1};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        rev.set(i, j, m(perm[i], perm[j]));
    ConditionReport reversed = cat4_check(rev, Kappa(0.0));
    CHECK(direct.failed() == reversed.failed());
    CHECK(direct.worst_margin ==
          doctest::Approx(reversed.worst_margin).epsilon(1e-9));
  }
}

TEST_CASE("cycl4_check agrees with boxtimes_check at kappa = 0") {
  std::mt19937_64 rng(67);
  std::size_t disagreements = 0, informative = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    FiniteMetric m = random_unit_band_metric(4, rng);
    ConditionReport box = boxtimes_check(m);
    ConditionReport cyc = cycl4_check(m, Kappa(0.0));
    if (box.boundary || cyc.boundary) continue;
    ++informative;
    if (box.failed() != cyc.failed()) ++disagreements;
  }
  CHECK(disagreements == 0);
  CHECK(informative > 1500);
}

TEST_CASE("cycl4_check verdict is monotone in the curvature bound") {
  auto [flat, fp] = sample_model_subset(5, Kappa(0.0), 71);
  for (double kv : {0.0, 0.5, 1.0})
    CHECK_FALSE(cycl4_check(flat, Kappa(kv)).failed());
  auto [hyp, hp] = sample_model_subset(5, Kappa(-1.0), 73);
  for (double kv : {-1.0, -0.5, 0.0})
    CHECK_FALSE(cycl4_check(hyp, Kappa(kv)).failed());
}

TEST_CASE("midpoint inequality value: anchors") {
  // Colinear triple x = (0,0), y = (1,0), z = (2,0) with w = (1, h):
  // equality for planar points.
  std::vector<std::array<double, 2>> pts = {{0, 0}, {1, 0}, {2, 0}, {1, 0.7}};
  FiniteMetric m = from_points(pts);
  CHECK(std::fabs(midpoint_inequality_value(m, 0, 1, 2, 3)) <= 1e-12);

  // y = x (t = 0): the two sides coincide.
  FiniteMetric d(3);
  d.set(0, 1, 0.0);
  d.set(0, 2, 1.5);
  d.set(1, 2, 1.5);
  FiniteMetric four(4);
  four.set(0, 1, 0.0);
  four.set(0, 2, 1.0);
  four.set(1, 2, 1.0);
  four.set(0, 3, 0.9);
  four.set(1, 3, 0.9);
  four.set(2, 3, 1.1);
  CHECK(midpoint_inequality_value(four, 0, 1, 2, 3) ==
        doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(midpoint_inequality_value(four, 0, 3, 2, 1),
                  std::invalid_argument);
}

TEST_CASE("midpoint inequality holds on box-times-passing metrics") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  int checked = 0;
  while (checked < 200) {
    // Build a metric with an exactly aligned triple, then a free fourth
    // point; keep only box-times-passing instances.
    double xy = u(rng), yz = u(rng);
    FiniteMetric m(4);
    m.set(0, 1, xy);
    m.set(1, 2, yz);
    m.set(0, 2, xy + yz);
    double xw = u(rng) + xy, zw = u(rng) + yz;
    double lo = std::max({std::fabs(xw - (xy + yz)), xy > xw ? xy - xw : 0.0});
    (void)lo;
    m.set(0, 3, xw);
    m.set(2, 3, zw);
    double yw_lo = std::max(std::fabs(xw - xy), std::fabs(zw - yz));
    double yw_hi = std::min(xw + xy, zw + yz);
    if (yw_lo > yw_hi) continue;
    m.set(1, 3, 0.5 * (yw_lo + yw_hi));
    if (validate(m)) continue;
    // The aligned-triple bound is the s -> 0 limit of the box-times family,
    // so it needs the family to hold exactly, not just within tolerance.
    if (boxtimes_check(m).worst_margin < 1e-12) continue;
    CHECK(midpoint_inequality_value(m, 0, 1, 2, 3) >= -1e-9);
    ++checked;
  }
}
