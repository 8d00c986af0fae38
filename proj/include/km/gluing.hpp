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

#ifndef KM_GLUING_HPP
#define KM_GLUING_HPP

#include <optional>
#include <variant>
#include <vector>

#include "km/finite_metric.hpp"
#include "km/model_geometry.hpp"

namespace km {

// Distances in the gluing of two convex pieces of the model surface along
// an identified segment or point.  Piece S is a convex polygon; piece T is
// either a triangle in the same model surface or a real interval.  Both
// pieces are convex, hence isometrically embedded, so same-piece distances
// are the ambient ones and a cross-piece distance is the minimum over the
// seam of (distance to the seam point) + (seam point to target).
//
// Only pairwise distances between marked points are ever materialized; the
// glued space itself is never represented as a metric space.

struct GluePoint {
  enum class Piece { S, T };
  Piece piece = Piece::S;
  ModelPoint point;        // pieces S and triangle T
  double interval_x = 0.0; // interval T: coordinate in [0, length]
};

class GluedSpace {
 public:
  // Segment gluing: piece T is the triangle (seam_a, apex, seam_b) attached
  // to S along the seam [seam_a, seam_b].  The triangle shares the seam's
  // ambient coordinates, so the identification is the identity on it.
  static GluedSpace along_segment(Kappa kappa,
                                  std::vector<ModelPoint> polygon,
                                  const ModelPoint& seam_a,
                                  const ModelPoint& seam_b,
                                  const ModelPoint& apex);

  // Point gluing: piece T is the interval [0, length], with 0 identified
  // with glue_point in S.
  static GluedSpace at_point(Kappa kappa, std::vector<ModelPoint> polygon,
                             const ModelPoint& glue_point, double length);

  Kappa kappa() const { return kappa_; }
  bool segment_seam() const { return segment_; }
  const std::vector<ModelPoint>& polygon() const { return polygon_; }
  const ModelPoint& seam_a() const { return seam_a_; }
  const ModelPoint& seam_b() const { return seam_b_; }
  const ModelPoint& apex() const { return apex_; }
  double interval_length() const { return interval_length_; }

  GluePoint s_point(const ModelPoint& p) const;
  GluePoint t_point(const ModelPoint& p) const;
  GluePoint t_interval_point(double x) const;

  // Distance in the glued space.  Cross-piece distances over a segment
  // seam are minimized by ternary search on the seam parameter (the
  // objective is convex along the seam geodesic) refined to parameter
  // tolerance 1e-12, with the seam endpoints always kept as candidates.
  double distance(const GluePoint& a, const GluePoint& b) const;

  // Seam point realizing the cross-piece minimum, as a parameter in [0,1];
  // nullopt for same-piece queries.
  std::optional<double> seam_argmin(const GluePoint& a,
                                    const GluePoint& b) const;

  // Pairwise glued distances of the marked points.
  FiniteMetric tuple_distance_matrix(const std::vector<GluePoint>& pts) const;

 private:
  double through_seam(const ModelPoint& from_s, const GluePoint& b,
                      double* argmin) const;
  double t_side_distance(const ModelPoint& seam_point,
                         const GluePoint& b) const;

  Kappa kappa_;
  bool segment_ = true;
  std::vector<ModelPoint> polygon_;
  ModelPoint seam_a_, seam_b_;  // segment seam (seam_a == glue point for point seam)
  ModelPoint apex_;             // triangle T
  bool interval_t_ = false;
  double interval_length_ = 0.0;
};

}  // namespace km

#endif  // KM_GLUING_HPP
