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

#include <algorithm>
#include <cmath>

#include "km/tolerance.hpp"

namespace km {

GluedSpace GluedSpace::along_segment(Kappa kappa,
                                     std::vector<ModelPoint> polygon,
                                     const ModelPoint& seam_a,
                                     const ModelPoint& seam_b,
                                     const ModelPoint& apex) {
  if (km::distance(seam_a, seam_b) <= 0.0)
    throw std::invalid_argument("segment seam with coincident endpoints");
  GluedSpace g;
  g.kappa_ = kappa;
  g.segment_ = true;
  g.polygon_ = std::move(polygon);
  g.seam_a_ = seam_a;
  g.seam_b_ = seam_b;
  g.apex_ = apex;
  g.interval_t_ = false;
  return g;
}

GluedSpace GluedSpace::at_point(Kappa kappa, std::vector<ModelPoint> polygon,
                                const ModelPoint& glue_point, double length) {
  if (length < 0.0) throw std::invalid_argument("negative interval length");
  GluedSpace g;
  g.kappa_ = kappa;
  g.segment_ = false;
  g.polygon_ = std::move(polygon);
  g.seam_a_ = glue_point;
  g.seam_b_ = glue_point;
  g.apex_ = glue_point;
  g.interval_t_ = true;
  g.interval_length_ = length;
  return g;
}

GluePoint GluedSpace::s_point(const ModelPoint& p) const {
  GluePoint gp;
  gp.piece = GluePoint::Piece::S;
  gp.point = p;
  return gp;
}

GluePoint GluedSpace::t_point(const ModelPoint& p) const {
  if (interval_t_)
    throw std::invalid_argument("triangle point on an interval piece");
  GluePoint gp;
  gp.piece = GluePoint::Piece::T;
  gp.point = p;
  return gp;
}

GluePoint GluedSpace::t_interval_point(double x) const {
  if (!interval_t_)
    throw std::invalid_argument("interval coordinate on a triangle piece");
  if (x < 0.0 || x > interval_length_)
    throw std::invalid_argument("interval coordinate out of range");
  GluePoint gp;
  gp.piece = GluePoint::Piece::T;
  gp.interval_x = x;
  return gp;
}

double GluedSpace::t_side_distance(const ModelPoint& seam_point,
                                   const GluePoint& b) const {
  if (interval_t_) return b.interval_x;  // measured from the glue point
  return km::distance(seam_point, b.point);
}

double GluedSpace::through_seam(const ModelPoint& from_s, const GluePoint& b,
                                double* argmin) const {
  if (!segment_) {
    if (argmin) *argmin = 0.0;
    return km::distance(from_s, seam_a_) + t_side_distance(seam_a_, b);
  }
  auto cost = [&](double lambda) {
    ModelPoint z = interpolate(seam_a_, seam_b_, lambda);
    return km::distance(from_s, z) + t_side_distance(z, b);
  };
  // lambda -> d(a, z(lambda)) + d(z(lambda), b) is convex along the seam
  // geodesic, so a bracketed ternary search converges; a coarse presample
  // picks the bracket and the seam endpoints stay candidates throughout.
  constexpr int kPresamples = 32;
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i <= kPresamples; ++i) {
    double l = static_cast<double>(i) / kPresamples;
    double c = cost(l);
    if (c < best) {
      best = c;
      best_i = i;
    }
  }
  double best_l = static_cast<double>(best_i) / kPresamples;
  double lo = std::max(0.0, (best_i - 1.0) / kPresamples);
  double hi = std::min(1.0, (best_i + 1.0) / kPresamples);
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (cost(m1) <= cost(m2))
      hi = m2;
    else
      lo = m1;
  }
  double mid = 0.5 * (lo + hi);
  double c = cost(mid);
  if (c < best) {
    best = c;
    best_l = mid;
  }
  if (argmin) *argmin = best_l;
  return best;
}

double GluedSpace::distance(const GluePoint& a, const GluePoint& b) const {
  if (a.piece == b.piece) {
    if (a.piece == GluePoint::Piece::T && interval_t_)
      return std::fabs(a.interval_x - b.interval_x);
    return km::distance(a.point, b.point);
  }
  const GluePoint& s = a.piece == GluePoint::Piece::S ? a : b;
  const GluePoint& t = a.piece == GluePoint::Piece::S ? b : a;
  return through_seam(s.point, t, nullptr);
}

std::optional<double> GluedSpace::seam_argmin(const GluePoint& a,
                                              const GluePoint& b) const {
  if (a.piece == b.piece) return std::nullopt;
  const GluePoint& s = a.piece == GluePoint::Piece::S ? a : b;
  const GluePoint& t = a.piece == GluePoint::Piece::S ? b : a;
  double arg = 0.0;
  through_seam(s.point, t, &arg);
  return arg;
}

FiniteMetric GluedSpace::tuple_distance_matrix(
    const std::vector<GluePoint>& pts) const {
  FiniteMetric m(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      m.set(i, j, distance(pts[i], pts[j]));
  return m;
}

}  // namespace km
