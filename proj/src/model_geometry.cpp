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

#include "km/model_geometry.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace km {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Vec3 = std::array<double, 3>;

Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// Minkowski inner product with signature (-, +, +), time coordinate first.
double mdot(const Vec3& a, const Vec3& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
// eta * (a x b): the Minkowski-orthogonal complement of span(a, b), chosen
// so that mdot(mnormal(a,b), p) equals det(a, b, p).
Vec3 mnormal(const Vec3& a, const Vec3& b) {
  Vec3 n = cross(a, b);
  return {-n[0], n[1], n[2]};
}

double coord_scale(const ModelPoint& p) {
  return std::max({std::fabs(p.c[0]), std::fabs(p.c[1]), std::fabs(p.c[2])});
}

// Re-projects drifted coordinates back onto the model surface.
ModelPoint normalized(Kappa kappa, Vec3 c) {
  if (kappa.flat()) {
    c[2] = 0.0;
    return {kappa, c};
  }
  double rho = kappa.radius();
  if (kappa.spherical()) {
    double n = norm(c);
    if (n == 0.0) throw std::domain_error("degenerate point on sphere");
    return {kappa, scale(c, rho / n)};
  }
  double q = -mdot(c, c);
  if (q <= 0.0 || c[0] <= 0.0)
    throw std::domain_error("point off the upper hyperboloid sheet");
  return {kappa, scale(c, rho / std::sqrt(q))};
}

void require_same_kappa(const ModelPoint& p, const ModelPoint& q) {
  if (p.kappa != q.kappa)
    throw std::invalid_argument("model points with mismatched curvature");
}

std::atomic<double> g_tolerance{-1.0};

}  // namespace

double global_tolerance() {
  double t = g_tolerance.load(std::memory_order_relaxed);
  if (t < 0.0) {
    t = 1e-9;
    if (const char* env = std::getenv("KM_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0.0) t = v;
    }
    g_tolerance.store(t, std::memory_order_relaxed);
  }
  return t;
}

void set_global_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

Kappa::Kappa(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("curvature must be finite");
  value = (std::fabs(v) < kFlatEps) ? 0.0 : v;
}

double Kappa::radius() const { return 1.0 / std::sqrt(std::fabs(value)); }

double diameter(Kappa kappa) {
  if (kappa.spherical()) return kPi / std::sqrt(kappa.value);
  return std::numeric_limits<double>::infinity();
}

const char* to_string(SideLabel s) {
  switch (s) {
    case SideLabel::Left: return "left";
    case SideLabel::Right: return "right";
    default: return "on";
  }
}

ModelPoint base_point(Kappa kappa) {
  if (kappa.flat()) return {kappa, {0.0, 0.0, 0.0}};
  double rho = kappa.radius();
  if (kappa.spherical()) return {kappa, {0.0, 0.0, rho}};
  return {kappa, {rho, 0.0, 0.0}};
}

ModelPoint exp_map(const ModelPoint& a, const Vec3& u, double r) {
  Kappa kappa = a.kappa;
  if (kappa.flat()) return normalized(kappa, add(a.c, scale(u, r)));
  double rho = kappa.radius();
  double s = r / rho;
  if (kappa.spherical())
    return normalized(kappa, add(scale(a.c, std::cos(s)),
                                 scale(u, rho * std::sin(s))));
  return normalized(kappa, add(scale(a.c, std::cosh(s)),
                               scale(u, rho * std::sinh(s))));
}

ModelPoint from_polar(Kappa kappa, double r, double phi) {
  if (r < 0.0) throw std::invalid_argument("negative polar radius");
  if (r >= diameter(kappa))
    throw std::invalid_argument("polar radius at or past the diameter");
  ModelPoint o = base_point(kappa);
  Vec3 e1, e2;
  if (kappa.hyperbolic()) {
    e1 = {0.0, 1.0, 0.0};
    e2 = {0.0, 0.0, 1.0};
  } else {
    e1 = {1.0, 0.0, 0.0};
    e2 = {0.0, 1.0, 0.0};
  }
  Vec3 u = add(scale(e1, std::cos(phi)), scale(e2, std::sin(phi)));
  return exp_map(o, u, r);
}

double distance(const ModelPoint& p, const ModelPoint& q) {
  require_same_kappa(p, q);
  Kappa kappa = p.kappa;
  if (kappa.flat()) return norm(sub(p.c, q.c));
  double rho = kappa.radius();
  if (kappa.spherical()) {
    // Chord-based: theta = 2 asin(|p-q|/2rho) near 0, the antipodal chord
    // near pi.  Both stay fully accurate where acos of the dot product
    // would lose half the digits.
    if (dot(p.c, q.c) >= 0.0) {
      double h = norm(sub(p.c, q.c)) / (2.0 * rho);
      return 2.0 * rho * std::asin(std::min(1.0, h));
    }
    double h = norm(add(p.c, q.c)) / (2.0 * rho);
    return rho * (kPi - 2.0 * std::asin(std::min(1.0, h)));
  }
  // Minkowski chord: <p-q, p-q> = 4 rho^2 sinh^2(alpha/2), spacelike for
  // points on one sheet.
  double m = mdot(sub(p.c, q.c), sub(p.c, q.c));
  double h = std::sqrt(std::max(0.0, m)) / (2.0 * rho);
  return 2.0 * rho * std::asinh(h);
}

namespace {

// Half-angle decomposition of the law of cosines.  With
//   S = sin^2(theta/2) * w,   C = cos^2(theta/2) * w,   w > 0,
// theta = 2 atan2(sqrt(S), sqrt(C)) uniformly over [0, pi], with none of
// the cancellation acos exhibits near 0 and pi.  Slightly negative S or C
// from rounding is clamped inside the tolerance band and rejected beyond
// it, so genuinely unrealizable side triples still surface as errors.
struct HalfAngleParts {
  double s2;  // sin^2(theta/2) * w
  double c2;  // cos^2(theta/2) * w
  double w;   // positive weight
};

HalfAngleParts law_of_cosines_parts(double a, double b, double c,
                                    Kappa kappa) {
  if (kappa.flat()) {
    // c^2 - (a-b)^2 = 4ab sin^2(theta/2), (a+b)^2 - c^2 = 4ab cos^2(theta/2).
    double s2 = (c - (a - b)) * (c + (a - b));
    double c2 = (a + b - c) * (a + b + c);
    return {s2, c2, 4.0 * a * b};
  }
  double rho = kappa.radius();
  if (kappa.spherical()) {
    // sin^2(sc/2) - sin^2((sa-sb)/2) = sin(sa)sin(sb) sin^2(theta/2) and
    // sin^2((sa+sb)/2) - sin^2(sc/2) = sin(sa)sin(sb) cos^2(theta/2),
    // factored via sin^2 A - sin^2 B = sin(A+B) sin(A-B).
    double sa = a / rho, sb = b / rho, sc = c / rho;
    double w = std::sin(sa) * std::sin(sb);
    double s2 = std::sin((sc + sa - sb) / 2.0) * std::sin((sc - sa + sb) / 2.0);
    double c2 = std::sin((sa + sb + sc) / 2.0) * std::sin((sa + sb - sc) / 2.0);
    return {s2, c2, w};
  }
  // Same factorization with sinh^2 A - sinh^2 B = sinh(A+B) sinh(A-B).
  double sa = a / rho, sb = b / rho, sc = c / rho;
  double w = std::sinh(sa) * std::sinh(sb);
  double s2 =
      std::sinh((sc + sa - sb) / 2.0) * std::sinh((sc - sa + sb) / 2.0);
  double c2 =
      std::sinh((sa + sb + sc) / 2.0) * std::sinh((sa + sb - sc) / 2.0);
  return {s2, c2, w};
}

}  // namespace

Angle law_of_cosines_angle(double a, double b, double c, Kappa kappa) {
  double dk = diameter(kappa);
  if (!(a > 0.0 && b > 0.0 && a < dk && b < dk))
    throw std::invalid_argument("hinge sides must lie in (0, diameter)");
  if (c < 0.0) throw std::invalid_argument("negative side length");
  HalfAngleParts parts = law_of_cosines_parts(a, b, c, kappa);
  // Clamp band on the cosine argument: cos(theta) over/undershoots by
  // 2*S/w resp. 2*C/w, so |S|, |C| within tol*w/2 of zero are rounding.
  double band = 0.5 * global_tolerance() * parts.w;
  double s2 = parts.s2, c2 = parts.c2;
  if (s2 < 0.0) {
    if (s2 < -band) throw UnrealizableError("side triple not realizable: third side shorter than |a-b|");
    s2 = 0.0;
  }
  if (c2 < 0.0) {
    if (c2 < -band) throw UnrealizableError("side triple not realizable: third side longer than a+b allows");
    c2 = 0.0;
  }
  if (s2 == 0.0 && c2 == 0.0) return Angle{0.0};
  return Angle{2.0 * std::atan2(std::sqrt(s2), std::sqrt(c2))};
}

double hinge_third_side(double a, double b, Angle theta, Kappa kappa) {
  double dk = diameter(kappa);
  if (!(a > 0.0 && b > 0.0 && a < dk && b < dk))
    throw std::invalid_argument("hinge sides must lie in (0, diameter)");
  double t = std::min(std::max(theta.radians, 0.0), kPi);
  double sh = std::sin(t / 2.0), ch = std::cos(t / 2.0);
  if (kappa.flat()) {
    double d = a - b;
    return std::sqrt(d * d + 4.0 * a * b * sh * sh);
  }
  double rho = kappa.radius();
  if (kappa.spherical()) {
    double sa = a / rho, sb = b / rho;
    double w = std::sin(sa) * std::sin(sb);
    double sd = std::sin((sa - sb) / 2.0), cs = std::cos((sa + sb) / 2.0);
    double s2 = sd * sd + w * sh * sh;
    double c2 = cs * cs + w * ch * ch;
    return rho * 2.0 * std::atan2(std::sqrt(std::max(0.0, s2)),
                                  std::sqrt(std::max(0.0, c2)));
  }
  double sa = a / rho, sb = b / rho;
  double w = std::sinh(sa) * std::sinh(sb);
  double sd = std::sinh((sa - sb) / 2.0);
  double s2 = sd * sd + w * sh * sh;
  return rho * 2.0 * std::asinh(std::sqrt(std::max(0.0, s2)));
}

Angle angle_at(const ModelPoint& x, const ModelPoint& o, const ModelPoint& z) {
  require_same_kappa(x, o);
  require_same_kappa(o, z);
  double a = distance(o, x);
  double b = distance(o, z);
  if (a == 0.0 || b == 0.0)
    throw std::invalid_argument("angle at a vertex with a coincident endpoint");
  return law_of_cosines_angle(a, b, distance(x, z), o.kappa);
}

ModelPoint interpolate(const ModelPoint& x, const ModelPoint& z, double t) {
  require_same_kappa(x, z);
  Kappa kappa = x.kappa;
  double d = distance(x, z);
  if (d == 0.0) return x;
  if (kappa.flat())
    return normalized(kappa, add(x.c, scale(sub(z.c, x.c), t)));
  double rho = kappa.radius();
  double s = d / rho;
  if (kappa.spherical()) {
    if (d >= diameter(kappa) - rho * 1e-12)
      throw std::invalid_argument("interpolation between antipodal points");
    double denom = std::sin(s);
    return normalized(kappa,
                      add(scale(x.c, std::sin((1.0 - t) * s) / denom),
                          scale(z.c, std::sin(t * s) / denom)));
  }
  double denom = std::sinh(s);
  return normalized(kappa,
                    add(scale(x.c, std::sinh((1.0 - t) * s) / denom),
                        scale(z.c, std::sinh(t * s) / denom)));
}

double interp_distance(double dxy, double dyz, double dxz, double t,
                       Kappa kappa) {
  if (dxy < 0.0 || dyz < 0.0 || dxz < 0.0)
    throw std::invalid_argument("negative side length");
  if (dxz == 0.0) return dxy;
  if (dxz >= diameter(kappa))
    throw std::invalid_argument("interpolation base at or past the diameter");
  double tol = global_tolerance();
  if (kappa.flat()) {
    double v = (1.0 - t) * dxy * dxy + t * dyz * dyz -
               t * (1.0 - t) * dxz * dxz;
    if (v < 0.0) {
      if (v < -tol * (1.0 + dxz * dxz))
        throw UnrealizableError("side triple not realizable in the plane");
      v = 0.0;
    }
    return std::sqrt(v);
  }
  double rho = kappa.radius();
  double s = dxz / rho;
  if (kappa.spherical()) {
    double v = (std::sin((1.0 - t) * s) * std::cos(dxy / rho) +
                std::sin(t * s) * std::cos(dyz / rho)) /
               std::sin(s);
    if (std::fabs(v) > 1.0) {
      if (std::fabs(v) > 1.0 + tol)
        throw UnrealizableError("side triple not realizable on the sphere");
      v = v > 0.0 ? 1.0 : -1.0;
    }
    return rho * std::acos(v);
  }
  double v = (std::sinh((1.0 - t) * s) * std::cosh(dxy / rho) +
              std::sinh(t * s) * std::cosh(dyz / rho)) /
             std::sinh(s);
  if (v < 1.0) {
    if (v < 1.0 - tol)
      throw UnrealizableError("side triple not realizable in the hyperbolic plane");
    v = 1.0;
  }
  return rho * std::acosh(v);
}

double signed_line_distance(const ModelPoint& a, const ModelPoint& b,
                            const ModelPoint& p) {
  require_same_kappa(a, b);
  require_same_kappa(b, p);
  Kappa kappa = a.kappa;
  if (kappa.flat()) {
    Vec3 ab = sub(b.c, a.c);
    Vec3 ap = sub(p.c, a.c);
    double n = std::hypot(ab[0], ab[1]);
    if (n == 0.0) throw std::invalid_argument("line through coincident points");
    return (ab[0] * ap[1] - ab[1] * ap[0]) / n;
  }
  double rho = kappa.radius();
  if (kappa.spherical()) {
    Vec3 n = cross(a.c, b.c);
    double nn = norm(n);
    if (nn == 0.0) throw std::invalid_argument("line through coincident points");
    double v = dot(p.c, n) / (nn * rho);
    v = std::min(1.0, std::max(-1.0, v));
    return rho * std::asin(v);
  }
  Vec3 n = mnormal(a.c, b.c);
  double nn = mdot(n, n);
  if (nn <= 0.0) throw std::invalid_argument("line through coincident points");
  return rho * std::asinh(mdot(n, p.c) / (std::sqrt(nn) * rho));
}

SideLabel side_of_line(const ModelPoint& a, const ModelPoint& b,
                       const ModelPoint& p) {
  double dab = distance(a, b);
  if (dab == 0.0) throw std::invalid_argument("line through coincident points");
  if (dab >= diameter(a.kappa))
    throw std::invalid_argument("line endpoints at or past the diameter");
  double sd = signed_line_distance(a, b, p);
  double band = on_band(std::max({coord_scale(a), coord_scale(b),
                                  coord_scale(p)}));
  if (std::fabs(sd) <= band) return SideLabel::On;
  return sd > 0.0 ? SideLabel::Left : SideLabel::Right;
}

bool point_on_segment(const ModelPoint& p, const ModelPoint& a,
                      const ModelPoint& b, double tol) {
  double t = tol >= 0.0 ? tol : global_tolerance();
  double dab = distance(a, b);
  double band = t * (1.0 + dab);
  return distance(a, p) + distance(p, b) <= dab + band;
}

bool segments_intersect(const ModelPoint& x, const ModelPoint& z,
                        const ModelPoint& y, const ModelPoint& w,
                        double tol) {
  double eps = tol >= 0.0 ? tol : global_tolerance();
  double dxz = distance(x, z);
  double dyw = distance(y, w);
  double scale = std::max({dxz, dyw, distance(x, y), distance(z, w)});
  double band = eps * (1.0 + scale);
  if (dxz <= band) return point_on_segment(x, y, w, eps);
  if (dyw <= band) return point_on_segment(y, x, z, eps);
  // Shared endpoints intersect trivially.
  if (distance(x, y) <= band || distance(x, w) <= band ||
      distance(z, y) <= band || distance(z, w) <= band)
    return true;
  double perimeter = distance(x, y) + distance(y, z) + distance(z, w) +
                     distance(w, x);
  if (perimeter >= 2.0 * diameter(x.kappa))
    throw std::invalid_argument("quadrilateral perimeter at or past 2*diameter");
  double sum_x = angle_at(y, x, z).radians + angle_at(z, x, w).radians;
  double sum_z = angle_at(y, z, x).radians + angle_at(x, z, w).radians;
  if (sum_x > kPi + eps || sum_z > kPi + eps) return false;
  double sy = signed_line_distance(x, z, y);
  double sw = signed_line_distance(x, z, w);
  double side_band = on_band(std::max({coord_scale(x), coord_scale(z),
                                       coord_scale(y), coord_scale(w)}));
  bool same_side = (sy > side_band && sw > side_band) ||
                   (sy < -side_band && sw < -side_band);
  return !same_side;
}

std::array<double, 3> unit_tangent(const ModelPoint& a, const ModelPoint& b) {
  require_same_kappa(a, b);
  Kappa kappa = a.kappa;
  double d = distance(a, b);
  if (d == 0.0) throw std::invalid_argument("tangent toward a coincident point");
  if (kappa.flat()) return scale(sub(b.c, a.c), 1.0 / d);
  double rho = kappa.radius();
  if (kappa.spherical()) {
    // Gram-Schmidt of b against a, normalized in the tangent plane.
    Vec3 u = sub(b.c, scale(a.c, dot(a.c, b.c) / (rho * rho)));
    double n = norm(u);
    if (n == 0.0) throw std::invalid_argument("tangent toward the antipode");
    return scale(u, 1.0 / n);
  }
  Vec3 u = add(b.c, scale(a.c, mdot(a.c, b.c) / (rho * rho)));
  double n2 = mdot(u, u);
  if (n2 <= 0.0) throw std::invalid_argument("degenerate hyperboloid tangent");
  return scale(u, 1.0 / std::sqrt(n2));
}

namespace {

// Tangent vector at a perpendicular to u, pointing into the Left side of
// the line through a in direction u.
Vec3 left_normal_tangent(const ModelPoint& a, const Vec3& u) {
  Kappa kappa = a.kappa;
  if (kappa.flat()) return {-u[1], u[0], 0.0};
  double rho = kappa.radius();
  if (kappa.spherical()) return scale(cross(a.c, u), 1.0 / rho);
  Vec3 w = mnormal(a.c, u);
  double n2 = mdot(w, w);
  return scale(w, 1.0 / std::sqrt(n2));
}

}  // namespace

std::array<double, 3> rotate_tangent(const ModelPoint& a, const ModelPoint& b,
                                     double phi) {
  Vec3 u = unit_tangent(a, b);
  Vec3 v = left_normal_tangent(a, u);
  return add(scale(u, std::cos(phi)), scale(v, std::sin(phi)));
}

double tangent_angle(const ModelPoint& o, const ModelPoint& a,
                     const ModelPoint& b) {
  Vec3 u = unit_tangent(o, a);
  Vec3 v = unit_tangent(o, b);
  Vec3 n = left_normal_tangent(o, u);
  double x, y;
  if (o.kappa.hyperbolic()) {
    x = mdot(v, u);
    y = mdot(v, n);
  } else {
    x = dot(v, u);
    y = dot(v, n);
  }
  return std::atan2(y, x);
}

ModelPoint place_point(const ModelPoint& a, const ModelPoint& b, double da,
                       double db, SideLabel side) {
  double dk = diameter(a.kappa);
  if (!(da >= 0.0 && db >= 0.0 && da < dk && db < dk))
    throw std::invalid_argument("placement distances must lie in [0, diameter)");
  double dab = distance(a, b);
  if (dab == 0.0) throw std::invalid_argument("placement base with coincident endpoints");
  if (da == 0.0) {
    // Degenerate hinge: the point is a itself; accept when db matches.
    if (std::fabs(db - dab) > on_band(dab))
      throw UnrealizableError("placement distances not realizable");
    return a;
  }
  Angle theta = law_of_cosines_angle(dab, da, db, a.kappa);
  bool degenerate = theta.radians <= on_band(1.0) ||
                    theta.radians >= kPi - on_band(1.0);
  if (side == SideLabel::On && !degenerate)
    throw std::invalid_argument("side On requested for a non-degenerate triple");
  double phi = theta.radians;
  if (side == SideLabel::Right) phi = -phi;
  return exp_map(a, rotate_tangent(a, b, phi), da);
}

}  // namespace km
