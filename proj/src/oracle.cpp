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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "km/conditions.hpp"
#include "km/tolerance.hpp"

namespace km {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Per-trial generator derived deterministically from the suite seed, so
// trials stay independent of each other and of execution order.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ull * (trial + 1)));
}

}  // namespace

double boxtimes_grid_min(double a, double b, double c, double e, double f,
                         double g, std::size_t resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  double best = std::numeric_limits<double>::infinity();
  double step = 1.0 / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    double s = static_cast<double>(i) * step;
    for (std::size_t j = 0; j < resolution; ++j) {
      double t = static_cast<double>(j) * step;
      best = std::min(best, boxtimes_value(a, b, c, e, f, g, s, t));
    }
  }
  return best;
}

namespace {

struct FeasProblem {
  double a, b, c, e, f, g;
  Kappa kappa;
  double rmax;

  ModelPoint point(double r, double phi) const {
    return from_polar(kappa, std::min(r, rmax), phi);
  }

  std::array<ModelPoint, 4> configuration(const std::array<double, 5>& p) const {
    return {base_point(kappa), point(p[0], 0.0), point(p[1], p[2]),
            point(p[3], p[4])};
  }

  double violation(const std::array<double, 5>& p) const {
    auto q = configuration(p);
    double v = distance(q[0], q[1]) - a;
    v = std::max(v, distance(q[1], q[2]) - b);
    v = std::max(v, distance(q[2], q[3]) - c);
    v = std::max(v, distance(q[3], q[0]) - e);
    v = std::max(v, f - distance(q[0], q[2]));
    v = std::max(v, g - distance(q[1], q[3]));
    return v;
  }
};

// Golden-section refinement of one coordinate over [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, int iters) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// Polar parameters of four points with the first pinned at the base and
// the second on the canonical ray.
std::array<double, 5> params_from_points(const std::array<ModelPoint, 4>& q) {
  std::array<double, 5> p{};
  const ModelPoint& o = q[0];
  p[0] = distance(o, q[1]);
  auto polar_of = [&](const ModelPoint& target, double* r, double* phi) {
    *r = distance(o, target);
    if (*r == 0.0 || p[0] == 0.0) {
      *phi = 0.0;
      return;
    }
    double ang = angle_at(q[1], o, target).radians;
    double sd = signed_line_distance(o, q[1], target);
    *phi = sd < 0.0 ? -ang : ang;
  };
  polar_of(q[2], &p[1], &p[2]);
  polar_of(q[3], &p[3], &p[4]);
  return p;
}

}  // namespace

FeasibilityResult cycl4_feasibility_numeric(double a, double b, double c,
                                            double e, double f, double g,
                                            Kappa kappa, std::uint64_t seed,
                                            int starts) {
  double scale = std::max({a, b, c, e, f, g});
  if (a + b + c + e >= 2.0 * diameter(kappa))
    throw std::invalid_argument("edge perimeter at or past 2*diameter");
  FeasProblem prob{a, b, c, e, f, g, kappa, 0.0};
  prob.rmax = a + b + c + e + f + g + 1.0;
  if (kappa.spherical())
    prob.rmax = std::min(prob.rmax, 0.98 * diameter(kappa));

  std::vector<std::array<double, 5>> initial;
  // Deterministic warm starts: the two diagonal-true subembeddings (each
  // hinges both triangles over one diagonal realized exactly).
  auto subembed = [&](double aa, double bb, double cc, double ee, double ff)
      -> std::optional<std::array<ModelPoint, 4>> {
    if (ff > aa + bb || ff < std::fabs(aa - bb)) return std::nullopt;
    if (ff > ee + cc || ff < std::fabs(ee - cc)) return std::nullopt;
    if (ff >= diameter(kappa)) return std::nullopt;
    try {
      ModelPoint xp = base_point(kappa);
      ModelPoint zp = from_polar(kappa, ff, 0.0);
      ModelPoint yp = (aa == 0.0 && bb == 0.0)
                          ? xp
                          : place_point(xp, zp, aa, bb, SideLabel::Left);
      ModelPoint wp = (ee == 0.0 && cc == 0.0)
                          ? xp
                          : place_point(xp, zp, ee, cc, SideLabel::Right);
      return std::array<ModelPoint, 4>{xp, yp, zp, wp};
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  if (auto cfg = subembed(a, b, c, e, f)) initial.push_back(params_from_points(*cfg));
  if (auto cfg = subembed(b, c, e, a, g)) {
    // Diagonal (y, w) matched: the subembedding builds (y, z, w, x).
    std::array<ModelPoint, 4> re = {(*cfg)[3], (*cfg)[0], (*cfg)[1], (*cfg)[2]};
    initial.push_back(params_from_points(re));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double rmix = std::min(prob.rmax, 1.5 * scale + 1e-6);
  while (static_cast<int>(initial.size()) < starts) {
    initial.push_back({rmix * unit(rng), rmix * unit(rng),
                       kPi * (2.0 * unit(rng) - 1.0), rmix * unit(rng),
                       kPi * (2.0 * unit(rng) - 1.0)});
  }

  FeasibilityResult best;
  best.violation = std::numeric_limits<double>::infinity();
  const double feasible_cut = 1e-7;
  for (const auto& start : initial) {
    std::array<double, 5> p = start;
    double v = prob.violation(p);
    for (int sweep = 0; sweep < 60; ++sweep) {
      double before = v;
      for (int coord = 0; coord < 5; ++coord) {
        double lo = (coord == 2 || coord == 4) ? -kPi : 0.0;
        double hi = (coord == 2 || coord == 4) ? kPi : prob.rmax;
        auto line = [&](double x) {
          auto q = p;
          q[coord] = x;
          return prob.violation(q);
        };
        double xbest = golden_min(line, lo, hi, 40);
        if (line(xbest) < v) {
          p[coord] = xbest;
          v = prob.violation(p);
        }
      }
      if (before - v < 1e-13 * (1.0 + scale)) break;
    }
    if (v < best.violation) {
      best.violation = v;
      best.configuration = prob.configuration(p);
    }
    if (best.violation <= 0.0) break;
  }
  best.feasible = best.violation <= feasible_cut;
  return best;
}

double seam_dense_min(const GluedSpace& g, const GluePoint& a,
                      const GluePoint& b, std::size_t samples) {
  if (a.piece == b.piece)
    throw std::invalid_argument("seam scan needs a cross-piece pair");
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const GluePoint& s = a.piece == GluePoint::Piece::S ? a : b;
  const GluePoint& t = a.piece == GluePoint::Piece::S ? b : a;
  auto t_leg = [&](const ModelPoint& z) {
    if (g.segment_seam()) return distance(z, t.point);
    return t.interval_x;
  };
  if (!g.segment_seam())
    return distance(s.point, g.seam_a()) + t_leg(g.seam_a());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    double lambda = static_cast<double>(i) / static_cast<double>(samples - 1);
    ModelPoint z = interpolate(g.seam_a(), g.seam_b(), lambda);
    best = std::min(best, distance(s.point, z) + t_leg(z));
  }
  return best;
}

const char* to_string(LemmaKind k) {
  switch (k) {
    case LemmaKind::AlexandrovLarger: return "alexandrov_larger";
    case LemmaKind::AlexandrovSmaller: return "alexandrov_smaller";
    case LemmaKind::Crossing: return "crossing";
    case LemmaKind::QuadrupleP: return "quadruple_p";
    default: return "angle_calculus";
  }
}

bool lemma_kind_from_string(const std::string& name, LemmaKind* out) {
  for (LemmaKind k :
       {LemmaKind::AlexandrovLarger, LemmaKind::AlexandrovSmaller,
        LemmaKind::Crossing, LemmaKind::QuadrupleP, LemmaKind::AngleCalculus}) {
    if (name == to_string(k)) {
      *out = k;
      return true;
    }
  }
  return false;
}

namespace {

// Shared sampling helpers for the lemma drivers.  Lengths are drawn from a
// window that keeps every quadruple perimeter below 2 * diameter for
// kappa > 0 and at unit scale otherwise.
struct LemmaSampler {
  Kappa kappa;
  std::mt19937_64 rng;
  double len_lo, len_hi;

  LemmaSampler(Kappa k, std::mt19937_64 r) : kappa(k), rng(std::move(r)) {
    if (k.spherical()) {
      double dk = diameter(k);
      len_lo = 0.02 * dk;
      len_hi = 0.22 * dk;
    } else if (k.hyperbolic()) {
      double s = 1.0 / std::sqrt(-k.value);
      len_lo = 0.05 * s;
      len_hi = 1.2 * s;
    } else {
      len_lo = 0.05;
      len_hi = 1.2;
    }
  }

  double unit() { return std::uniform_real_distribution<double>(0, 1)(rng); }
  double length() { return len_lo + (len_hi - len_lo) * unit(); }
  double in(double lo, double hi) { return lo + (hi - lo) * unit(); }
  bool chance(double p) { return unit() < p; }
};

struct TrialOutcome {
  bool sampled = false;    // hypothesis configuration produced
  double violation = 0.0;  // conclusion violation (<= 0 means satisfied)
  std::string detail;
};

// Lemma: matched edges and a no-shorter far diagonal force a no-shorter
// near diagonal, given the angle condition at z.
TrialOutcome run_alexandrov_larger(LemmaSampler& s) {
  TrialOutcome out;
  Kappa kappa = s.kappa;
  if (s.chance(0.02)) {
    // Degenerate branch y = z: edge matching pins the primed triangle, so
    // the conclusion degenerates to an equality.
    ModelPoint z = base_point(kappa);
    ModelPoint x = from_polar(kappa, s.length(), 0.0);
    ModelPoint w = from_polar(kappa, s.length(), s.in(0.3, 2 * kPi - 0.3));
    ModelPoint zp = base_point(kappa);
    ModelPoint wp = from_polar(kappa, distance(z, w), 0.0);
    ModelPoint xp;
    try {
      xp = place_point(zp, wp, distance(x, z), distance(x, w),
                       s.chance(0.5) ? SideLabel::Left : SideLabel::Right);
    } catch (const std::exception&) {
      return out;
    }
    out.sampled = true;
    out.violation = distance(x, z) - distance(xp, zp);
    return out;
  }
  // Angle condition at z: directions to y and w separated by alpha + beta
  // with alpha + beta >= pi, y Left of the ray to x and w Right.
  double dzx = s.length(), dzy = s.length(), dzw = s.length();
  double alpha = s.in(0.55 * kPi, 0.98 * kPi);
  double beta = s.in(kPi - alpha + 0.01, 0.98 * kPi);
  ModelPoint z = base_point(kappa);
  ModelPoint x = from_polar(kappa, dzx, 0.0);
  ModelPoint y = from_polar(kappa, dzy, alpha);
  ModelPoint w = from_polar(kappa, dzw, -beta);
  double angle_yzw = 2.0 * kPi - alpha - beta;  // interior angle at z
  // Primed: same hinge (y, z, w) opened to gamma, then x' hinged on both
  // circles around y' and w'; reject unrealizable gamma.
  double gamma = s.in(angle_yzw, kPi);
  ModelPoint zp = base_point(kappa);
  ModelPoint yp = from_polar(kappa, dzy, 0.0);
  ModelPoint wp = from_polar(kappa, dzw, gamma);
  double dyw_p = distance(yp, wp);
  double dxy = distance(x, y), dxw = distance(x, w);
  if (dyw_p > dxy + dxw || dyw_p < std::fabs(dxy - dxw)) return out;
  ModelPoint xp;
  try {
    xp = place_point(yp, wp, dxy, dxw,
                     s.chance(0.5) ? SideLabel::Left : SideLabel::Right);
  } catch (const std::exception&) {
    return out;
  }
  out.sampled = true;
  out.violation = distance(x, z) - distance(xp, zp);
  return out;
}

struct SmallerInstance {
  ModelPoint x, y, z, w;     // unprimed
  ModelPoint xp, yp, zp, wp; // primed, diagonals crossing
  bool valid = false;
};

SmallerInstance sample_smaller_instance(LemmaSampler& s, bool opposite_side) {
  SmallerInstance inst;
  Kappa kappa = s.kappa;
  // Primed quadrilateral with y' Left, w' Right of the diagonal; keep only
  // crossing configurations.
  double f = s.length();
  ModelPoint xp = base_point(kappa);
  ModelPoint zp = from_polar(kappa, f, 0.0);
  ModelPoint yp, wp;
  try {
    yp = from_polar(kappa, s.length(), s.in(0.15, kPi - 0.15));
    wp = from_polar(kappa, s.length(), -s.in(0.15, kPi - 0.15));
  } catch (const std::exception&) {
    return inst;
  }
  if (s.chance(0.02)) yp = zp;  // degenerate branch y' = z'
  if (!segments_intersect(xp, zp, yp, wp)) return inst;
  double a = distance(xp, yp), b = distance(yp, zp);
  double c = distance(zp, wp), e = distance(wp, xp);
  // Unprimed: same edges, angle at y opened, so d(x, z) >= d(x', z').
  double angle_y = (a == 0.0 || b == 0.0)
                       ? 0.0
                       : angle_at(xp, yp, zp).radians;
  ModelPoint y = base_point(kappa);
  ModelPoint x, z, w;
  if (a == 0.0) {
    x = y;
    z = from_polar(kappa, b, 0.0);
  } else {
    x = from_polar(kappa, a, 0.0);
    if (b == 0.0) {
      z = y;
    } else {
      double opened = s.in(angle_y, kPi);
      try {
        z = from_polar(kappa, b, opened);
      } catch (const std::exception&) {
        return inst;
      }
    }
  }
  double dxz = distance(x, z);
  if (dxz > c + e || dxz < std::fabs(c - e)) return inst;
  if (dxz == 0.0) return inst;
  SideLabel wside;
  if (opposite_side) {
    SideLabel ys = side_of_line(x, z, y);
    wside = ys == SideLabel::Left ? SideLabel::Right : SideLabel::Left;
  } else {
    wside = s.chance(0.5) ? SideLabel::Left : SideLabel::Right;
  }
  try {
    w = place_point(x, z, e, c, wside);
  } catch (const std::exception&) {
    return inst;
  }
  if (kappa.spherical()) {
    double per = distance(x, y) + distance(y, z) + distance(z, w) +
                 distance(w, x);
    if (per >= 2.0 * diameter(kappa)) return inst;
  }
  inst.x = x;
  inst.y = y;
  inst.z = z;
  inst.w = w;
  inst.xp = xp;
  inst.yp = yp;
  inst.zp = zp;
  inst.wp = wp;
  inst.valid = true;
  return inst;
}

TrialOutcome run_alexandrov_smaller(LemmaSampler& s) {
  TrialOutcome out;
  SmallerInstance inst = sample_smaller_instance(s, false);
  if (!inst.valid) return out;
  out.sampled = true;
  out.violation = distance(inst.y, inst.w) - distance(inst.yp, inst.wp);
  return out;
}

TrialOutcome run_crossing(LemmaSampler& s) {
  TrialOutcome out;
  SmallerInstance inst = sample_smaller_instance(s, true);
  if (!inst.valid) return out;
  out.sampled = true;
  out.violation =
      segments_intersect(inst.x, inst.z, inst.y, inst.w, 1e-8) ? 0.0 : 1.0;
  if (out.violation > 0.0) out.detail = "diagonals failed to cross";
  return out;
}

TrialOutcome run_quadruple_p(LemmaSampler& s) {
  TrialOutcome out;
  Kappa kappa = s.kappa;
  // X is the model surface itself; sample an actual quadruple.
  ModelPoint x = from_polar(kappa, s.length() * s.unit(), s.in(0, 2 * kPi));
  ModelPoint y = from_polar(kappa, s.length() * s.unit(), s.in(0, 2 * kPi));
  ModelPoint z = from_polar(kappa, s.length() * s.unit(), s.in(0, 2 * kPi));
  ModelPoint w = from_polar(kappa, s.length() * s.unit(), s.in(0, 2 * kPi));
  double dxz = distance(x, z);
  if (dxz == 0.0) return out;
  // Primed quadrilateral dominating the edges with a shorter diagonal.
  double f = dxz * s.in(0.55, 1.0);
  double a = distance(x, y) * (1.0 + 0.4 * s.unit());
  double b = distance(y, z) * (1.0 + 0.4 * s.unit());
  double e = distance(w, x) * (1.0 + 0.4 * s.unit());
  double c = distance(z, w) * (1.0 + 0.4 * s.unit());
  if (f < std::fabs(a - b) || f < std::fabs(e - c)) return out;
  if (a == 0.0 && b == 0.0) return out;
  if (e == 0.0 && c == 0.0) return out;
  if (kappa.spherical()) {
    if (a + b + c + e >= 2.0 * diameter(kappa)) return out;
    if (a + b + f >= 2.0 * diameter(kappa)) return out;
    if (c + e + f >= 2.0 * diameter(kappa)) return out;
  }
  ModelPoint xp = base_point(kappa);
  ModelPoint zp = from_polar(kappa, f, 0.0);
  ModelPoint yp, wp;
  try {
    yp = place_point(xp, zp, a, b, SideLabel::Left);
    wp = place_point(xp, zp, e, c,
                     s.chance(0.5) ? SideLabel::Left : SideLabel::Right);
  } catch (const std::exception&) {
    return out;
  }
  ModelPoint p = interpolate(xp, zp, s.unit());
  out.sampled = true;
  out.violation =
      distance(y, w) - (distance(yp, p) + distance(p, wp));
  return out;
}

TrialOutcome run_angle_calculus(LemmaSampler& s, std::size_t variant) {
  TrialOutcome out;
  Kappa kappa = s.kappa;
  switch (variant % 3) {
    case 0: {  // additivity at a vertex
      ModelPoint o = base_point(kappa);
      ModelPoint x = from_polar(kappa, s.length(), s.in(0, 2 * kPi));
      ModelPoint y = from_polar(kappa, s.length(), s.in(0, 2 * kPi));
      ModelPoint z = from_polar(kappa, s.length(), s.in(0, 2 * kPi));
      out.sampled = true;
      out.violation = angle_at(x, o, z).radians -
                      (angle_at(x, o, y).radians + angle_at(y, o, z).radians);
      out.detail = "angle additivity";
      return out;
    }
    case 1: {  // diagonal split: [x,z] through a point of [o,y]
      ModelPoint o = base_point(kappa);
      ModelPoint y = from_polar(kappa, s.length(), s.in(0, 2 * kPi));
      ModelPoint p = interpolate(o, y, s.in(0.15, 0.85));
      ModelPoint probe = from_polar(kappa, s.length(), s.in(0, 2 * kPi));
      if (distance(p, probe) == 0.0) return out;
      auto u = unit_tangent(p, probe);
      double s1 = s.in(0.3, 1.0) * s.len_hi * 0.5;
      double s2 = s.in(0.3, 1.0) * s.len_hi * 0.5;
      ModelPoint x = exp_map(p, u, s1);
      ModelPoint z = exp_map(p, {-u[0], -u[1], -u[2]}, s2);
      if (distance(o, x) == 0.0 || distance(o, z) == 0.0) return out;
      out.sampled = true;
      out.violation = std::fabs(angle_at(x, o, z).radians -
                                (angle_at(x, o, y).radians +
                                 angle_at(y, o, z).radians));
      out.detail = "diagonal angle split";
      return out;
    }
    default: {  // full angle around a vertex on the far side
      ModelPoint o = base_point(kappa);
      ModelPoint x = from_polar(kappa, s.length(), 0.0);
      double alpha = s.in(0.55 * kPi, 0.95 * kPi);
      double beta = s.in(kPi - alpha + 0.02, 0.95 * kPi);
      ModelPoint y = from_polar(kappa, s.length(), alpha);
      ModelPoint z = from_polar(kappa, s.length(), -beta);
      out.sampled = true;
      out.violation = std::fabs(angle_at(x, o, y).radians +
                                angle_at(y, o, z).radians +
                                angle_at(z, o, x).radians - 2.0 * kPi);
      out.detail = "full angle";
      return out;
    }
  }
}

}  // namespace

LemmaSuiteReport lemma_property_suite(LemmaKind kind, Kappa kappa,
                                      std::size_t trials, std::uint64_t seed) {
  LemmaSuiteReport report;
  report.kind = kind;
  report.kappa = kappa.value;
  report.trials = trials;
  const double tol = 1e-8;
  constexpr std::size_t kRejectionCap = 1'000'000;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    LemmaSampler sampler(kappa, make_rng(seed, trial));
    TrialOutcome out;
    std::size_t attempts = 0;
    do {
      switch (kind) {
        case LemmaKind::AlexandrovLarger:
          out = run_alexandrov_larger(sampler);
          break;
        case LemmaKind::AlexandrovSmaller:
          out = run_alexandrov_smaller(sampler);
          break;
        case LemmaKind::Crossing:
          out = run_crossing(sampler);
          break;
        case LemmaKind::QuadrupleP:
          out = run_quadruple_p(sampler);
          break;
        case LemmaKind::AngleCalculus:
          out = run_angle_calculus(sampler, trial);
          break;
      }
      ++attempts;
    } while (!out.sampled && attempts < kRejectionCap);
    if (!out.sampled) {
      ++report.skipped;
      continue;
    }
    ++report.completed;
    if (out.violation > report.worst_violation)
      report.worst_violation = out.violation;
    if (out.violation > tol) {
      ++report.failures;
      if (report.first_failure.empty()) {
        std::ostringstream os;
        os << "trial " << trial << ": violation " << out.violation;
        if (!out.detail.empty()) os << " (" << out.detail << ")";
        report.first_failure = os.str();
      }
    }
  }
  return report;
}

}  // namespace km
