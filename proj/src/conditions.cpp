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

#include <algorithm>
#include <cmath>

#include "km/majorize.hpp"
#include "km/tolerance.hpp"

namespace km {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Accumulates the worst margin / witness over many checked instances and
// finalizes a deterministic report.
struct ReportBuilder {
  ConditionReport report;
  double scale = 1.0;  // margin unit; cut thresholds scale with it

  explicit ReportBuilder(std::string condition, double kappa, double scale)
      : scale(std::max(scale, 0.0)) {
    report.condition = std::move(condition);
    report.kappa = kappa;
    report.worst_margin = std::numeric_limits<double>::infinity();
  }

  void observe(double margin, const Witness& w) {
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.witness = w;
      report.witness->margin = margin;
    }
  }

  ConditionReport finish() {
    if (std::isinf(report.worst_margin)) {
      // Nothing to check: vacuous pass.
      report.worst_margin = 0.0;
      report.verdict = Verdict::Pass;
      report.witness.reset();
      return std::move(report);
    }
    double cut = global_tolerance() * (1.0 + scale);
    report.boundary = std::fabs(report.worst_margin) <= kBoundaryBand * (1.0 + scale);
    if (report.worst_margin < -cut) {
      report.verdict = Verdict::Fail;
    } else {
      report.verdict = Verdict::Pass;
      report.witness.reset();
    }
    return std::move(report);
  }
};

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "exempt";
  }
}

QuadrupleLabeling QuadrupleLabeling::from_metric(const FiniteMetric& m,
                                                 std::size_t x, std::size_t y,
                                                 std::size_t z,
                                                 std::size_t w) {
  QuadrupleLabeling q;
  q.x = x;
  q.y = y;
  q.z = z;
  q.w = w;
  q.xy = m(x, y);
  q.yz = m(y, z);
  q.zw = m(z, w);
  q.wx = m(w, x);
  q.xz = m(x, z);
  q.yw = m(y, w);
  return q;
}

double wir_value(const FiniteMetric& m, const CyclicTuple& t, std::size_t j) {
  std::size_t n = t.size();
  if (n < 4) throw std::invalid_argument("Wir tuples need length >= 4");
  if (j < 2 || j > n - 2)
    throw std::invalid_argument("Wir chord step j must lie in [2, n-2]");
  double edges = 0.0, chords = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = m(t[i], t[(i + 1) % n]);
    double c = m(t[i], t[(i + j) % n]);
    edges += e * e;
    chords += c * c;
  }
  double sj = std::sin(static_cast<double>(j) * kPi / static_cast<double>(n));
  double s1 = std::sin(kPi / static_cast<double>(n));
  return sj * sj * edges - s1 * s1 * chords;
}

namespace {

// Shared walk over Wir tuples; calls visit(t) for each enumerated map.
template <typename Visit>
void enumerate_wir_maps(std::size_t points, std::size_t n, WirMode mode,
                        std::uint64_t budget, std::uint64_t cost_per_map,
                        Visit visit) {
  std::uint64_t used = 0;
  auto charge = [&] {
    used += cost_per_map;
    if (used > budget)
      throw std::runtime_error("Wir enumeration budget exceeded");
  };
  CyclicTuple t;
  t.indices.assign(n, 0);
  if (mode == WirMode::AllMaps) {
    // Odometer over all points^n maps.
    while (true) {
      charge();
      visit(t);
      std::size_t pos = 0;
      while (pos < n && ++t.indices[pos] == points) {
        t.indices[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
    return;
  }
  // Injective tuples, quotiented by rotation and reflection: the smallest
  // index is pinned at position 0 and its two neighbors are ordered.
  if (points < n) return;
  std::vector<std::size_t> perm;
  std::vector<bool> in_use(points, false);
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      if (n >= 3 && perm[1] > perm[n - 1]) return;  // reflection
      for (std::size_t i = 0; i < n; ++i) t.indices[i] = perm[i];
      charge();
      visit(t);
      return;
    }
    for (std::size_t v = 0; v < points; ++v) {
      if (in_use[v]) continue;
      if (depth > 0 && v < perm[0]) continue;  // rotation: perm[0] minimal
      in_use[v] = true;
      perm.push_back(v);
      self(self, depth + 1);
      perm.pop_back();
      in_use[v] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

ConditionReport wir_check(const FiniteMetric& m, std::size_t n, WirMode mode,
                          std::uint64_t budget) {
  if (n < 4) throw std::invalid_argument("Wir conditions need n >= 4");
  double scale = m.max_entry();
  ReportBuilder rb("wir" + std::to_string(n), 0.0, scale * scale);
  std::uint64_t js = n / 2 - 1;
  enumerate_wir_maps(m.size(), n, mode, budget, js, [&](const CyclicTuple& t) {
    for (std::size_t j = 2; j + 2 <= n && j <= n / 2; ++j) {
      double v = wir_value(m, t, j);
      Witness w;
      w.indices = t.indices;
      w.params["j"] = static_cast<double>(j);
      rb.observe(v, w);
    }
  });
  return rb.finish();
}

double boxtimes_value(double a, double b, double c, double e, double f,
                      double g, double s, double t) {
  return (1 - t) * (1 - s) * a * a + t * (1 - s) * b * b + t * s * c * c +
         (1 - t) * s * e * e - t * (1 - t) * f * f - s * (1 - s) * g * g;
}

BoxtimesMin boxtimes_min(double a, double b, double c, double e, double f,
                         double g) {
  // V(s, t) is quadratic: V = a^2 + t P + s Q + st D + f^2 t^2 + g^2 s^2
  // with P = b^2 - a^2 - f^2, Q = e^2 - a^2 - g^2, D = a^2 - b^2 + c^2 - e^2.
  double P = b * b - a * a - f * f;
  double Q = e * e - a * a - g * g;
  double D = a * a - b * b + c * c - e * e;
  BoxtimesMin best;
  best.value = std::numeric_limits<double>::infinity();
  auto consider = [&](double s, double t) {
    s = std::min(1.0, std::max(0.0, s));
    t = std::min(1.0, std::max(0.0, t));
    double v = boxtimes_value(a, b, c, e, f, g, s, t);
    if (v < best.value) best = BoxtimesMin{v, s, t};
  };
  // Corners.
  consider(0, 0);
  consider(0, 1);
  consider(1, 0);
  consider(1, 1);
  // Edge minimizers of the 1D quadratics (only meaningful when the
  // quadratic coefficient is positive).
  if (f > 0.0) {
    consider(0.0, -P / (2 * f * f));
    consider(1.0, -(P + D) / (2 * f * f));
  }
  if (g > 0.0) {
    consider(-Q / (2 * g * g), 0.0);
    consider(-(Q + D) / (2 * g * g), 1.0);
  }
  // Interior stationary point of the quadratic (2x2 linear system).
  double det = 4.0 * f * f * g * g - D * D;
  if (det != 0.0) {
    double t0 = (-2.0 * g * g * P + D * Q) / det;
    double s0 = (-2.0 * f * f * Q + D * P) / det;
    if (s0 > 0.0 && s0 < 1.0 && t0 > 0.0 && t0 < 1.0) consider(s0, t0);
  }
  return best;
}

ConditionReport boxtimes_check(const FiniteMetric& m) {
  double scale = m.max_entry();
  ReportBuilder rb("boxtimes", 0.0, scale * scale);
  std::size_t n = m.size();
  auto check = [&](std::size_t x, std::size_t y, std::size_t z,
                   std::size_t w) {
    BoxtimesMin bm =
        boxtimes_min(m(x, y), m(y, z), m(z, w), m(w, x), m(x, z), m(y, w));
    Witness wit;
    wit.indices = {x, y, z, w};
    wit.params["s"] = bm.s;
    wit.params["t"] = bm.t;
    rb.observe(bm.value, wit);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          // The three diagonal pairings of {i, j, k, l}; every other
          // labeling is reached from these by the s/t symmetries of the
          // form, and quadruples with repeated points reduce to triangle
          // inequalities.
          check(i, j, k, l);
          check(i, k, j, l);
          check(i, j, l, k);
        }
  return rb.finish();
}

ConditionReport quadruple_check(const QuadrupleLabeling& q, Kappa kappa) {
  double scale =
      std::max({q.xy, q.yz, q.zw, q.wx, q.xz, q.yw});
  ReportBuilder rb("quadruple", kappa.value, scale);
  double dk = diameter(kappa);
  if (q.edge_perimeter() >= 2.0 * dk) {
    ConditionReport r = rb.finish();
    r.verdict = Verdict::Exempt;
    return r;
  }
  double band = on_band(scale);
  Witness wit;
  wit.indices = {q.x, q.y, q.z, q.w};
  if (q.xz <= band) {
    // Degenerate diagonal: the crossing forces x' onto [y', w'], so the
    // bound is the triangle inequality through x.
    rb.observe(q.xy + q.wx - q.yw, wit);
    return rb.finish();
  }
  // Both triangles must subembed with the diagonal realized exactly.
  auto realizable = [&](double p, double r) {
    if (q.xz > p + r + band || q.xz < std::fabs(p - r) - band) return false;
    if (kappa.spherical() && p + r + q.xz >= 2.0 * dk) return false;
    return true;
  };
  if (!realizable(q.xy, q.yz)) {
    wit.note = "triangle (xy, yz, xz) not realizable";
    rb.observe(-std::fabs(q.xz - q.xy - q.yz), wit);
    return rb.finish();
  }
  if (!realizable(q.wx, q.zw)) {
    wit.note = "triangle (wx, zw, xz) not realizable";
    rb.observe(-std::fabs(q.xz - q.wx - q.zw), wit);
    return rb.finish();
  }
  ModelPoint xp = base_point(kappa);
  ModelPoint zp = from_polar(kappa, q.xz, 0.0);
  // Clamp hinge sides into the realizable range; the band above already
  // vouched for them.
  auto clamp_side = [&](double v) {
    return std::min(v, dk * (1.0 - 1e-12));
  };
  ModelPoint yp = q.xy <= band && q.yz <= band
                      ? xp
                      : place_point(xp, zp, clamp_side(q.xy), clamp_side(q.yz),
                                    SideLabel::Left);
  ModelPoint wp = q.wx <= band && q.zw <= band
                      ? xp
                      : place_point(xp, zp, clamp_side(q.wx), clamp_side(q.zw),
                                    SideLabel::Right);
  if (!segments_intersect(xp, zp, yp, wp)) {
    // No crossing configuration exists for this labeling; the condition
    // quantifies over crossing configurations only.
    return rb.finish();
  }
  double model_yw = distance(yp, wp);
  wit.params["model_yw"] = model_yw;
  rb.observe(model_yw - q.yw, wit);
  return rb.finish();
}

namespace {

// Merges a per-quadruple report into the aggregate one.
void merge(ReportBuilder& rb, const ConditionReport& sub) {
  if (sub.verdict == Verdict::Exempt) return;
  if (sub.witness) {
    rb.observe(sub.worst_margin, *sub.witness);
  } else {
    Witness none;
    rb.observe(sub.worst_margin, none);
  }
}

}  // namespace

ConditionReport cat4_check(const FiniteMetric& m, Kappa kappa) {
  double scale = m.max_entry();
  ReportBuilder rb("cat4", kappa.value, scale);
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          // Three cyclic labelings per 4-subset, two diagonal choices each.
          const std::array<std::array<std::size_t, 4>, 6> labelings = {{
              {i, j, k, l},  // diagonals (i,k), (j,l); matched (i,k)
              {j, i, l, k},  // same cycle, matched (j,l)
              {i, k, j, l},  // diagonals (i,j), (k,l); matched (i,j)
              {k, i, l, j},  // matched (k,l)
              {i, j, l, k},  // diagonals (i,l), (j,k); matched (i,l)
              {j, i, k, l},  // matched (j,k)
          }};
          for (const auto& lab : labelings) {
            merge(rb, quadruple_check(QuadrupleLabeling::from_metric(
                                          m, lab[0], lab[1], lab[2], lab[3]),
                                      kappa));
          }
        }
  return rb.finish();
}

ConditionReport cycl4_check(const FiniteMetric& m, Kappa kappa) {
  ConditionReport r = cat4_check(m, kappa);
  r.condition = "cycl4";
  if (r.witness) r.witness->note = "via the 4-point subembedding form";
  return r;
}

ConditionReport cycl_n_verify(const FiniteMetric& m, const CyclicTuple& t,
                              const ComparisonMap& g, double tol) {
  std::size_t n = t.size();
  if (g.points.size() != n)
    throw std::invalid_argument("comparison map length mismatch");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      scale = std::max(scale, m(t[i], t[j]));
  double cut = tol >= 0.0 ? tol : 1e-8 * (1.0 + scale);

  ConditionReport r;
  r.condition = "cycl_n_verify";
  r.kappa = g.kappa.value;
  double worst_edge = 0.0;     // largest |d_model - d_X| over cycle edges
  double worst_slack = 0.0;    // most negative d_model - d_X over chords
  bool convex = true;
  Witness worst_wit;
  // The report margin is the distance to the nearest violated constraint:
  // cut - residual for edges, slack + cut for chords, -cut for a failed
  // convexity test.
  double margin = cut;
  auto observe = [&](double v, std::size_t i, std::size_t j,
                     const char* note) {
    if (v < margin) {
      margin = v;
      worst_wit.indices = {i, j};
      worst_wit.note = note;
      worst_wit.margin = v;
    }
  };

  for (std::size_t i = 0; i < n && n > 1; ++i) {
    std::size_t ni = (i + 1) % n;
    double res =
        std::fabs(distance(g.points[i], g.points[ni]) - m(t[i], t[ni]));
    worst_edge = std::max(worst_edge, res);
    observe(cut - res, i, ni, "edge residual over tolerance");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool consecutive = (j == i + 1) || (i == 0 && j == n - 1);
      if (consecutive) continue;
      double slack = distance(g.points[i], g.points[j]) - m(t[i], t[j]);
      worst_slack = std::min(worst_slack, slack);
      observe(slack + cut, i, j, "chord shorter than the metric distance");
    }
  // Convexity: every chord from vertex i meets the chord spanned by the
  // neighbors of i.
  for (std::size_t i = 0; i < n && n >= 3; ++i) {
    std::size_t prev = (i + n - 1) % n, next = (i + 1) % n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!segments_intersect(g.points[i], g.points[j], g.points[prev],
                              g.points[next], cut)) {
        convex = false;
        observe(-cut, i, j, "convexity chord test failed");
      }
    }
  }
  r.worst_margin = margin;
  r.boundary = std::fabs(margin) <= kBoundaryBand * (1.0 + scale);
  if (margin < 0.0 || !convex) {
    r.verdict = Verdict::Fail;
    worst_wit.params["worst_edge_residual"] = worst_edge;
    worst_wit.params["worst_chord_slack"] = worst_slack;
    r.witness = worst_wit;
  } else {
    r.verdict = Verdict::Pass;
    Witness ok;
    ok.params["worst_edge_residual"] = worst_edge;
    ok.params["worst_chord_slack"] = worst_slack;
    ok.margin = margin;
    ok.note = "worst margins";
    r.witness = ok;
  }
  return r;
}

double midpoint_inequality_value(const FiniteMetric& m, std::size_t x,
                                 std::size_t y, std::size_t z,
                                 std::size_t w) {
  double dxz = m(x, z);
  if (dxz <= 0.0) throw std::invalid_argument("aligned triple needs x != z");
  double mis = std::fabs(m(x, y) + m(y, z) - dxz);
  if (mis > on_band(m.max_entry()))
    throw std::invalid_argument("triple (x, y, z) is not aligned");
  double t = m(x, y) / dxz;
  return (1.0 - t) * m(x, w) * m(x, w) + t * m(z, w) * m(z, w) -
         t * (1.0 - t) * dxz * dxz - m(y, w) * m(y, w);
}

}  // namespace km
