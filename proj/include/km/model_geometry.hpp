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

#ifndef KM_MODEL_GEOMETRY_HPP
#define KM_MODEL_GEOMETRY_HPP

#include <array>
#include <limits>
#include <stdexcept>
#include <string>

#include "km/tolerance.hpp"

namespace km {

// Geometry of the model surface of constant curvature kappa: the Euclidean
// plane (kappa = 0), the sphere of radius 1/sqrt(kappa) (kappa > 0), or the
// hyperbolic plane of curvature kappa (kappa < 0).
//
// Points are kept in an embedded coordinate model:
//   kappa = 0   (x, y, 0), the plane.
//   kappa > 0   (x, y, z) with x^2 + y^2 + z^2 = 1/kappa.
//   kappa < 0   (t, x, y) on the upper sheet of the hyperboloid
//               -t^2 + x^2 + y^2 = 1/kappa in Minkowski 3-space with
//               signature (-, +, +).
// Closed-form geodesics exist in each model and the distance formulas below
// stay well conditioned over the whole admissible range.

// Curvature bound.  Magnitudes below kFlatEps are collapsed to exactly zero:
// the trigonometric and hyperbolic formulas degrade there and the Euclidean
// branch is their analytic limit.
struct Kappa {
  double value = 0.0;

  Kappa() = default;
  explicit Kappa(double v);

  bool flat() const { return value == 0.0; }
  bool spherical() const { return value > 0.0; }
  bool hyperbolic() const { return value < 0.0; }
  // Curvature radius 1/sqrt(|kappa|); meaningless for flat.
  double radius() const;

  friend bool operator==(Kappa a, Kappa b) { return a.value == b.value; }
  friend bool operator!=(Kappa a, Kappa b) { return a.value != b.value; }

  static constexpr double kFlatEps = 1e-12;
};

// Diameter of the model surface: pi/sqrt(kappa) for kappa > 0, +infinity
// otherwise.
double diameter(Kappa kappa);

struct ModelPoint {
  Kappa kappa;
  std::array<double, 3> c{0.0, 0.0, 0.0};
};

// Interior angle measure, in [0, pi].
struct Angle {
  double radians = 0.0;
};

enum class SideLabel { Left, Right, On };

const char* to_string(SideLabel s);

// Thrown when a length tuple is not realizable as a triangle or hinge in
// the model surface beyond the clamping tolerance.
class UnrealizableError : public std::domain_error {
 public:
  explicit UnrealizableError(const std::string& what)
      : std::domain_error(what) {}
};

// Base point of the canonical frame: the origin, the north pole (0, 0, r),
// or the hyperboloid apex (r, 0, 0).
ModelPoint base_point(Kappa kappa);

// Point at arc distance r from the base point in direction phi, measured
// from the canonical ray.  Requires r < diameter(kappa).
ModelPoint from_polar(Kappa kappa, double r, double phi);

// Geodesic distance.  Throws std::invalid_argument on mismatched kappa.
double distance(const ModelPoint& p, const ModelPoint& q);

// Angle at the vertex joining sides a and b, opposite side c.  Requires
// 0 < a < diameter, 0 < b < diameter.  Lengths outside the realizable range
// by more than the clamping tolerance raise UnrealizableError.
Angle law_of_cosines_angle(double a, double b, double c, Kappa kappa);

// Third side of the hinge with sides a, b and angle theta between them.
// Inverse of law_of_cosines_angle and strictly increasing in theta on
// (0, pi).
double hinge_third_side(double a, double b, Angle theta, Kappa kappa);

// Angle at o between x and z.  Requires x != o and z != o.
Angle angle_at(const ModelPoint& x, const ModelPoint& o, const ModelPoint& z);

// Signed angle at o from the direction toward a to the direction toward b,
// in (-pi, pi]; positive toward the Left side of the line through o and a.
// Computed from tangent-space directions, so it stays fully accurate where
// the side-length route loses half the digits (angles near 0 or pi).
double tangent_angle(const ModelPoint& o, const ModelPoint& a,
                     const ModelPoint& b);

// Point p on the geodesic segment [x, z] with d(x, p) = t * d(x, z).
// Returns x when x = z.  Rejects antipodal endpoints (kappa > 0).
ModelPoint interpolate(const ModelPoint& x, const ModelPoint& z, double t);

// d(y, p) for p the point at parameter t along a geodesic from x to z in a
// triangle with side lengths d(x,y) = dxy, d(y,z) = dyz, d(x,z) = dxz,
// computed from the lengths alone.
double interp_distance(double dxy, double dyz, double dxz, double t,
                       Kappa kappa);

// Signed distance from p to the line through a and b; positive on the Left
// side.  The sign convention is the sign of the (Minkowski-adapted) triple
// product of the embedded coordinates, uniform across curvature signs.
double signed_line_distance(const ModelPoint& a, const ModelPoint& b,
                            const ModelPoint& p);

// Which side of the line through a, b the point p lies on.  Requires a != b
// and d(a, b) < diameter.  |signed distance| inside the On-band reports On.
SideLabel side_of_line(const ModelPoint& a, const ModelPoint& b,
                       const ModelPoint& p);

// Whether p lies on the segment [a, b], within the tolerance band.
bool point_on_segment(const ModelPoint& p, const ModelPoint& a,
                      const ModelPoint& b, double tol = -1.0);

// Whether the closed segments [x, z] and [y, w] meet.  Decided by the angle
// criterion: [x,z] and [y,w] intersect iff the two angle sums at x and z
// are at most pi and y, w do not lie on the same side of the line through
// x, z.  This characterization is robust near collinear configurations;
// no coordinate clipping is involved.  Requires the perimeter
// d(x,y)+d(y,z)+d(z,w)+d(w,x) < 2 * diameter.
bool segments_intersect(const ModelPoint& x, const ModelPoint& z,
                        const ModelPoint& y, const ModelPoint& w,
                        double tol = -1.0);

// Point p with d(a, p) = da, d(b, p) = db on the requested side of the line
// through a, b.  Requires a != b and (da, db, d(a,b)) realizable within
// tolerance; da, db < diameter.  Side On is accepted only for degenerate
// (collinear) triples.
ModelPoint place_point(const ModelPoint& a, const ModelPoint& b, double da,
                       double db, SideLabel side);

// Unit tangent at a pointing toward b (a != b, d(a,b) < diameter).
std::array<double, 3> unit_tangent(const ModelPoint& a, const ModelPoint& b);

// Point at arc distance r from a in tangent direction u (unit).
ModelPoint exp_map(const ModelPoint& a, const std::array<double, 3>& u,
                   double r);

// Tangent direction at a obtained by rotating the direction toward b by the
// signed angle phi (positive toward the Left side of the line through a, b).
std::array<double, 3> rotate_tangent(const ModelPoint& a, const ModelPoint& b,
                                     double phi);

}  // namespace km

#endif  // KM_MODEL_GEOMETRY_HPP
