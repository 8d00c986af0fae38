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

#include "km/oracle.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "km/conditions.hpp"

using namespace km;

TEST_CASE("boxtimes grid min anchors") {
  double rt2 = std::sqrt(2.0);
  double sq = boxtimes_grid_min(1, 1, 1, 1, rt2, rt2, 512);
  CHECK(sq >= 0.0);
  CHECK(sq <= 1e-5);
  CHECK(boxtimes_grid_min(1, 1, 1, 1, 2, 2, 512) <= -0.999);
  // Resolution 2 only sees the corners.
  CHECK(boxtimes_grid_min(1, 1, 1, 1, 2, 2, 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(boxtimes_grid_min(1, 1, 1, 1, 1, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("feasibility search: the unit square realizes itself") {
  double rt2 = std::sqrt(2.0);
  FeasibilityResult r =
      cycl4_feasibility_numeric(1, 1, 1, 1, rt2, rt2, Kappa(0.0), 3);
  CHECK(r.feasible);
  CHECK(r.violation <= 1e-7);
}

TEST_CASE("feasibility search: the 4-cycle metric is infeasible at kappa 0") {
  FeasibilityResult r =
      cycl4_feasibility_numeric(1, 1, 1, 1, 2, 2, Kappa(0.0), 3);
  CHECK_FALSE(r.feasible);
  CHECK(r.violation > 1e-3);
}

TEST_CASE("feasibility search: collinear data is degenerately feasible") {
  // Points 0, 1, 2, 3 on a line: edges (1,1,1,3), diagonals (2,2).
  FeasibilityResult r =
      cycl4_feasibility_numeric(1, 1, 1, 3, 2, 2, Kappa(0.0), 5);
  CHECK(r.feasible);
}

TEST_CASE("feasibility agrees with the subembedding checker off-boundary") {
  // The numeric search decides one cyclic labeling; the metric satisfies
  // the 4-point condition iff all three diagonal pairings are feasible.
  std::mt19937_64 rng(2203);
  std::uniform_real_distribution<double> u(1.0, 2.0);
  int informative = 0;
  for (int trial = 0; trial < 150; ++trial) {
    FiniteMetric m(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) m.set(i, j, u(rng));
    ConditionReport analytic = cat4_check(m, Kappa(0.0));
    if (analytic.boundary) continue;
    if (std::fabs(analytic.worst_margin) <= 1e-6 * 4.0) continue;
    bool numeric_all =
        cycl4_feasibility_numeric(m(0, 1), m(1, 2), m(2, 3), m(3, 0), m(0, 2),
                                  m(1, 3), Kappa(0.0), 900 + trial)
            .feasible &&
        cycl4_feasibility_numeric(m(0, 2), m(1, 2), m(1, 3), m(3, 0), m(0, 1),
                                  m(2, 3), Kappa(0.0), 901 + trial)
            .feasible &&
        cycl4_feasibility_numeric(m(0, 1), m(1, 3), m(2, 3), m(0, 2), m(0, 3),
                                  m(1, 2), Kappa(0.0), 902 + trial)
            .feasible;
    ++informative;
    CHECK(numeric_all == !analytic.failed());
  }
  CHECK(informative > 100);
}

TEST_CASE("seam_dense_min anchors") {
  // Mirrored apexes across a unit seam (see the gluing tests).
  auto planar = [](double x, double y) {
    return ModelPoint{Kappa(0.0), {x, y, 0.0}};
  };
  std::vector<ModelPoint> polygon = {planar(0, 0), planar(1, 0),
                                     planar(0.5, 1)};
  ModelPoint apex = place_point(planar(0, 0), planar(1, 0),
                                std::hypot(0.5, 1.0), std::hypot(0.5, 1.0),
                                SideLabel::Right);
  GluedSpace g = GluedSpace::along_segment(Kappa(0.0), polygon, planar(0, 0),
                                           planar(1, 0), apex);
  GluePoint a = g.s_point(planar(0.5, 1));
  GluePoint b = g.t_point(apex);
  CHECK(seam_dense_min(g, a, b, 100000) == doctest::Approx(2.0).epsilon(1e-6));
  // Two samples only: the best seam endpoint.
  double ends = std::min(
      distance(planar(0.5, 1), planar(0, 0)) + distance(planar(0, 0), apex),
      distance(planar(0.5, 1), planar(1, 0)) + distance(planar(1, 0), apex));
  CHECK(seam_dense_min(g, a, b, 2) == doctest::Approx(ends));
  // A seam point sees its ambient distance exactly.
  GluePoint on_seam = g.s_point(planar(0, 0));
  CHECK(seam_dense_min(g, on_seam, b, 11) ==
        doctest::Approx(distance(planar(0, 0), apex)));
  CHECK_THROWS_AS(seam_dense_min(g, a, g.s_point(planar(0.2, 0.2)), 10),
                  std::invalid_argument);
}

TEST_CASE("lemma suites run clean at moderate trial counts") {
  for (double kv : {-1.0, 0.0, 1.0}) {
    for (LemmaKind kind :
         {LemmaKind::AlexandrovLarger, LemmaKind::AlexandrovSmaller,
          LemmaKind::Crossing, LemmaKind::QuadrupleP,
          LemmaKind::AngleCalculus}) {
      LemmaSuiteReport r = lemma_property_suite(kind, Kappa(kv), 500, 42);
      CAPTURE(kv);
      CAPTURE(to_string(kind));
      CAPTURE(r.first_failure);
      CHECK(r.clean());
      CHECK(r.completed > 0);
    }
  }
}

TEST_CASE("lemma suite names round-trip") {
  LemmaKind k;
  CHECK(lemma_kind_from_string("crossing", &k));
  CHECK(k == LemmaKind::Crossing);
  CHECK_FALSE(lemma_kind_from_string("nope", &k));
}
