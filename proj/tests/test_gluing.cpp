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

#include "km/gluing.hpp"

#include <doctest.h>

#include "km/conditions.hpp"
#include "km/oracle.hpp"
#include "helpers.hpp"

using namespace km;
using namespace km::testing;

namespace {

ModelPoint planar(double x, double y) {
  return ModelPoint{Kappa(0.0), {x, y, 0.0}};
}

// Flat anchor: both apexes mirror across the seam, so the geodesic between
// them unfolds to a straight segment of length 2 through (0.5, 0).
GluedSpace mirrored_apexes() {
  std::vector<ModelPoint> polygon = {planar(0, 0), planar(1, 0),
                                     planar(0.5, 1)};
  ModelPoint apex = place_point(planar(0, 0), planar(1, 0),
                                std::hypot(0.5, 1.0), std::hypot(0.5, 1.0),
                                SideLabel::Right);
  return GluedSpace::along_segment(Kappa(0.0), polygon, planar(0, 0),
                                   planar(1, 0), apex);
}

}  // namespace

TEST_CASE("glued distance: same piece is the ambient distance") {
  GluedSpace g = mirrored_apexes();
  GluePoint a = g.s_point(planar(0.2, 0.3));
  GluePoint b = g.s_point(planar(0.7, 0.1));
  CHECK(g.distance(a, b) ==
        doctest::Approx(std::hypot(0.5, 0.2)).epsilon(1e-12));
}

TEST_CASE("glued distance: mirrored apexes meet through the seam midpoint") {
  GluedSpace g = mirrored_apexes();
  GluePoint a = g.s_point(planar(0.5, 1));
  GluePoint b = g.t_point(g.apex());
  CHECK(g.distance(a, b) == doctest::Approx(2.0).epsilon(1e-9));
  auto arg = g.seam_argmin(a, b);
  REQUIRE(arg.has_value());
  CHECK(*arg == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("glued distance: a point on the seam sees ambient distances") {
  GluedSpace g = mirrored_apexes();
  GluePoint on_seam = g.s_point(planar(0.3, 0.0));
  GluePoint b = g.t_point(g.apex());
  CHECK(g.distance(on_seam, b) ==
        doctest::Approx(distance(planar(0.3, 0.0), g.apex())).epsilon(1e-9));
}

TEST_CASE("point gluing is additive through the glue point") {
  std::vector<ModelPoint> polygon = {planar(0, 0), planar(1, 0),
                                     planar(0.5, 1)};
  GluedSpace g = GluedSpace::at_point(Kappa(0.0), polygon, planar(1, 0), 0.75);
  GluePoint a = g.s_point(planar(0.1, 0.2));
  GluePoint end = g.t_interval_point(0.75);
  CHECK(g.distance(a, end) ==
        doctest::Approx(distance(planar(0.1, 0.2), planar(1, 0)) + 0.75));
  CHECK(g.distance(g.s_point(planar(1, 0)), end) == doctest::Approx(0.75));
}

TEST_CASE("glued distances agree with the dense seam scan") {
  for (double kv : {-1.0, 0.0, 1.0}) {
    Kappa k(kv);
    std::mt19937_64 rng(811 + static_cast<int>(kv));
    double worst = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
      RandomGlued rg = random_glued_space(k, rng, false);
      auto [a, b] = off_seam_pair(rg, rng);
      double fast = rg.space.distance(a, b);
      double dense = seam_dense_min(rg.space, a, b, 20000);
      worst = std::max(worst, std::fabs(fast - dense));
      CHECK(fast <= dense + 1e-12);
    }
    CAPTURE(kv);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("glued distance is symmetric and satisfies the triangle inequality") {
  for (double kv : {-1.0, 0.0, 1.0}) {
    Kappa k(kv);
    std::mt19937_64 rng(907 + static_cast<int>(kv));
    for (int trial = 0; trial < 40; ++trial) {
      RandomGlued rg = random_glued_space(k, rng, trial % 4 == 0);
      std::vector<GluePoint> pts;
      for (int i = 0; i < 2; ++i) pts.push_back(random_s_point(rg, rng));
      for (int i = 0; i < 2; ++i) pts.push_back(random_t_point(rg, rng));
      for (const auto& a : pts)
        for (const auto& b : pts)
          CHECK(rg.space.distance(a, b) ==
                doctest::Approx(rg.space.distance(b, a)).epsilon(1e-10));
      for (const auto& a : pts)
        for (const auto& b : pts)
          for (const auto& c : pts)
            CHECK(rg.space.distance(a, c) <= rg.space.distance(a, b) +
                                                 rg.space.distance(b, c) +
                                                 1e-8);
    }
  }
}

TEST_CASE("tuple_distance_matrix validates and matches pairwise queries") {
  std::mt19937_64 rng(1013);
  RandomGlued rg = random_glued_space(Kappa(0.0), rng, false);
  std::vector<GluePoint> pts;
  for (int i = 0; i < 3; ++i) pts.push_back(random_s_point(rg, rng));
  for (int i = 0; i < 2; ++i) pts.push_back(random_t_point(rg, rng));
  FiniteMetric m = rg.space.tuple_distance_matrix(pts);
  CHECK_FALSE(validate(m));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      CHECK(m(i, j) == doctest::Approx(rg.space.distance(pts[i], pts[j])));
}

TEST_CASE("glued 4-point samples satisfy the CAT comparison at the gluing kappa") {
  for (double kv : {-1.0, 0.0, 1.0}) {
    Kappa k(kv);
    std::mt19937_64 rng(1117 + static_cast<int>(kv));
    for (int trial = 0; trial < 25; ++trial) {
      RandomGlued rg = random_glued_space(k, rng, trial % 3 == 0);
      std::vector<GluePoint> pts;
      pts.push_back(random_s_point(rg, rng));
      pts.push_back(random_s_point(rg, rng));
      pts.push_back(random_t_point(rg, rng));
      pts.push_back(random_t_point(rg, rng));
      FiniteMetric m = rg.space.tuple_distance_matrix(pts);
      ConditionReport r = cat4_check(m, k);
      CHECK_FALSE(r.failed());
    }
  }
}
