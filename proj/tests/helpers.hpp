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

#ifndef KM_TESTS_HELPERS_HPP
#define KM_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "km/gluing.hpp"
#include "km/model_geometry.hpp"

namespace km::testing {

inline constexpr double kTestPi = 3.14159265358979323846;

// Random gluing of a convex polygon and a triangle (or interval) sharing a
// boundary edge (or vertex).  Polygon vertices sit on a metric circle, so
// they are in convex position; the triangle apex goes on the far side of
// the shared edge.
struct RandomGlued {
  GluedSpace space;
  std::vector<ModelPoint> polygon;
};

inline double unit_scale(Kappa kappa) {
  if (kappa.spherical()) return 0.22 * diameter(kappa);
  if (kappa.hyperbolic()) return 1.0 / std::sqrt(-kappa.value);
  return 1.0;
}

inline RandomGlued random_glued_space(Kappa kappa, std::mt19937_64& rng,
                                      bool interval_piece) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = unit_scale(kappa);
  // Polygon: 3-6 points on a metric circle in angular order (stratified
  // angles keep consecutive vertices separated), hence in convex position.
  std::size_t sides = 3 + static_cast<std::size_t>(u(rng) * 4) % 4;
  double radius = (0.4 + 0.5 * u(rng)) * s;
  ModelPoint center = from_polar(kappa, 0.3 * s * u(rng), 2 * kTestPi * u(rng));
  std::vector<ModelPoint> dedup;
  for (std::size_t i = 0; i < sides; ++i) {
    double ang = 2 * kTestPi *
                 (static_cast<double>(i) + 0.15 + 0.7 * u(rng)) /
                 static_cast<double>(sides);
    ModelPoint probe = from_polar(kappa, 2.0 * radius, ang);
    auto dir = unit_tangent(center, probe);
    dedup.push_back(exp_map(center, dir, radius));
  }
  ModelPoint seam_a = dedup.back();
  ModelPoint seam_b = dedup.front();

  RandomGlued out{GluedSpace::at_point(kappa, dedup, seam_a, 0.0), dedup};
  if (interval_piece) {
    double len = (0.2 + u(rng)) * s;
    out.space = GluedSpace::at_point(kappa, dedup, seam_a, len);
    return out;
  }
  double seam_len = distance(seam_a, seam_b);
  SideLabel poly_side = SideLabel::On;
  for (const auto& p : dedup) {
    SideLabel sl = side_of_line(seam_a, seam_b, p);
    if (sl != SideLabel::On) {
      poly_side = sl;
      break;
    }
  }
  SideLabel far =
      poly_side == SideLabel::Left ? SideLabel::Right : SideLabel::Left;
  double da = (0.2 + u(rng)) * s;
  double lo = std::fabs(da - seam_len) + 0.05 * s;
  double hi = da + seam_len - 0.05 * s;
  if (lo > hi) lo = hi = 0.5 * (std::fabs(da - seam_len) + da + seam_len);
  double db = lo + (hi - lo) * u(rng);
  ModelPoint apex = place_point(seam_a, seam_b, da, db, far);
  out.space = GluedSpace::along_segment(kappa, dedup, seam_a, seam_b, apex);
  return out;
}

// Random point of a convex piece: iterated geodesic mixing of vertices.
inline ModelPoint random_in_hull(const std::vector<ModelPoint>& verts,
                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelPoint p = verts[static_cast<std::size_t>(u(rng) * verts.size()) %
                       verts.size()];
  for (int i = 0; i < 4; ++i) {
    const ModelPoint& v =
        verts[static_cast<std::size_t>(u(rng) * verts.size()) % verts.size()];
    p = interpolate(p, v, u(rng));
  }
  return p;
}

inline GluePoint random_s_point(const RandomGlued& g, std::mt19937_64& rng) {
  return g.space.s_point(random_in_hull(g.polygon, rng));
}

// Cross-piece pair kept away from the seam: near the seam the scan
// objective's curvature blows up and a finite dense scan stops being a
// meaningful reference.
inline std::pair<GluePoint, GluePoint> off_seam_pair(const RandomGlued& g,
                                                     std::mt19937_64& rng) {
  double clearance = 0.05 * unit_scale(g.space.kappa());
  auto far_enough = [&](const ModelPoint& p) {
    return std::fabs(signed_line_distance(g.space.seam_a(), g.space.seam_b(),
                                          p)) > clearance;
  };
  ModelPoint a = g.polygon.front();
  for (int i = 0; i < 200; ++i) {
    a = random_in_hull(g.polygon, rng);
    if (far_enough(a)) break;
  }
  ModelPoint b = g.space.apex();
  std::vector<ModelPoint> tri = {g.space.seam_a(), g.space.apex(),
                                 g.space.seam_b()};
  for (int i = 0; i < 200; ++i) {
    b = random_in_hull(tri, rng);
    if (far_enough(b)) break;
  }
  if (!far_enough(a)) a = random_in_hull(g.polygon, rng);
  if (!far_enough(b)) b = g.space.apex();
  return {g.space.s_point(a), g.space.t_point(b)};
}

inline GluePoint random_t_point(const RandomGlued& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (!g.space.segment_seam()) {
    if (g.space.interval_length() == 0.0) return g.space.t_interval_point(0.0);
    return g.space.t_interval_point(u(rng) * g.space.interval_length());
  }
  std::vector<ModelPoint> tri = {g.space.seam_a(), g.space.apex(),
                                 g.space.seam_b()};
  return g.space.t_point(random_in_hull(tri, rng));
}

}  // namespace km::testing

#endif  // KM_TESTS_HELPERS_HPP
