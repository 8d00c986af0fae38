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

#include "km/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "km/conditions.hpp"
#include "km/gluing.hpp"
#include "km/tolerance.hpp"

namespace km {

std::string MajorizeError::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::PerimeterTooLarge:
      os << "tuple perimeter at or past twice the model diameter";
      break;
    case Kind::NotQuadruple:
      os << "input violates the quadruple comparison condition";
      break;
    case Kind::NumericalBreakdown:
      os << "numerical breakdown";
      break;
  }
  if (!step.empty()) os << " (" << step << ")";
  if (!witness.empty()) {
    os << "; witness positions";
    for (std::size_t i : witness) os << ' ' << i;
  }
  return os.str();
}

namespace {

struct BuildFailure {
  MajorizeError error;
};

[[noreturn]] void fail(MajorizeError::Kind kind, std::string step,
                       std::vector<std::size_t> witness = {}) {
  throw BuildFailure{MajorizeError{kind, std::move(witness), std::move(step)}};
}

struct BuildContext {
  Kappa kappa;
  double scale = 0.0;           // largest distance in the root matrix
  std::size_t max_depth = 0;    // root tuple length bounds the recursion depth
  std::uint64_t calls = 0;
  std::uint64_t call_budget = 0;
  double zero_band = 0.0;       // treat closing chords below this as zero

  void enter(std::size_t depth) {
    if (++calls > call_budget)
      fail(MajorizeError::Kind::NumericalBreakdown,
           "recursive call budget exhausted");
    if (depth > max_depth)
      fail(MajorizeError::Kind::NumericalBreakdown,
           "recursion deeper than the tuple length");
  }

  // Edge drift allowed at a level working on k points: a factor of 4 per
  // level over a machine-epsilon floor.  Exceeding it means the placements
  // stopped being trustworthy, independent of the final verification.
  double level_budget(std::size_t k) const {
    return 1e-12 * (1.0 + scale) * std::pow(4.0, static_cast<double>(k));
  }
};

ModelPoint placed_polar(Kappa kappa, double r) {
  return from_polar(kappa, r, 0.0);
}

// Places the hinge triangle for sides (d01, d02, d12); vertex 2 goes Left.
std::vector<ModelPoint> place_triangle(BuildContext& ctx,
                                       const FiniteMetric& M) {
  std::vector<ModelPoint> g;
  g.push_back(base_point(ctx.kappa));
  g.push_back(placed_polar(ctx.kappa, M(0, 1)));
  try {
    g.push_back(place_point(g[0], g[1], M(0, 2), M(1, 2), SideLabel::Left));
  } catch (const UnrealizableError&) {
    fail(MajorizeError::Kind::NotQuadruple, "triangle not realizable",
         {0, 1, 2});
  }
  return g;
}

void check_level_drift(BuildContext& ctx, const FiniteMetric& M,
                       const std::vector<ModelPoint>& g) {
  std::size_t k = g.size();
  double budget = ctx.level_budget(k);
  for (std::size_t i = 0; i < k && k > 1; ++i) {
    std::size_t ni = (i + 1) % k;
    if (std::fabs(distance(g[i], g[ni]) - M(i, ni)) > budget)
      fail(MajorizeError::Kind::NumericalBreakdown,
           "per-level edge budget exceeded at " + std::to_string(k) +
               " points");
  }
}

std::vector<ModelPoint> build(BuildContext& ctx, const FiniteMetric& M,
                              std::size_t depth);

// Common tail of both gluing branches: recurse on the folded cycle, split
// its long edge at the image of the dropped vertex, and reassemble.
struct FoldPlan {
  FiniteMetric folded;       // (k-1)-cycle distance matrix
  std::size_t long_a = 0;    // long edge endpoints (positions in folded)
  std::size_t long_b = 0;
  double first_part = 0.0;   // arc length from long_a to the dropped vertex
};

std::vector<ModelPoint> fold_and_split(BuildContext& ctx, const FoldPlan& plan,
                                       std::size_t depth) {
  std::vector<ModelPoint> g1 = build(ctx, plan.folded, depth + 1);
  double edge = distance(g1[plan.long_a], g1[plan.long_b]);
  if (edge <= 0.0)
    fail(MajorizeError::Kind::NumericalBreakdown,
         "degenerate long edge after folding");
  double t = std::min(1.0, std::max(0.0, plan.first_part / edge));
  ModelPoint q = interpolate(g1[plan.long_a], g1[plan.long_b], t);
  std::vector<ModelPoint> out(g1.size() + 1, q);
  // Reassembly depends on the branch; the caller rearranges.  Here we
  // return (g1..., q) and let the caller permute.
  for (std::size_t i = 0; i < g1.size(); ++i) out[i] = g1[i];
  out[g1.size()] = q;
  return out;
}

std::vector<ModelPoint> build(BuildContext& ctx, const FiniteMetric& M,
                              std::size_t depth) {
  ctx.enter(depth);
  std::size_t k = M.size();
  if (k == 1) return {base_point(ctx.kappa)};
  if (k == 2) return {base_point(ctx.kappa), placed_polar(ctx.kappa, M(0, 1))};
  if (k == 3) {
    auto g = place_triangle(ctx, M);
    check_level_drift(ctx, M, g);
    return g;
  }

  if (M(k - 2, 0) <= ctx.zero_band) {
    // Tail case: the neighbors of the last vertex coincide.  Recurse on
    // the cycle without the duplicate, glue an interval of the pendant
    // edge length at that point, and fold.
    if (M(k - 3, 0) <= ctx.zero_band)
      fail(MajorizeError::Kind::NumericalBreakdown,
           "inconsistent zero chords around the tail vertex");
    FiniteMetric M0(k - 2);
    for (std::size_t i = 0; i + 2 < k; ++i)
      for (std::size_t j = i + 1; j + 2 < k; ++j) M0.set(i, j, M(i, j));
    std::vector<ModelPoint> g0 = build(ctx, M0, depth + 1);
    double pendant = M(k - 2, k - 1);

    FoldPlan plan;
    plan.folded = FiniteMetric(k - 1);
    for (std::size_t i = 0; i + 2 < k; ++i) {
      for (std::size_t j = i + 1; j + 2 < k; ++j)
        plan.folded.set(i, j, distance(g0[i], g0[j]));
      plan.folded.set(i, k - 2, distance(g0[i], g0[0]) + pendant);
    }
    plan.long_a = k - 3;
    plan.long_b = k - 2;
    plan.first_part = distance(g0[k - 3], g0[0]);
    std::vector<ModelPoint> folded = fold_and_split(ctx, plan, depth);
    // folded = (g1[0..k-2], q); final cycle keeps g1 order with q inserted
    // as vertex k-2 and the pendant image as vertex k-1.
    std::vector<ModelPoint> out(k, folded.back());
    for (std::size_t i = 0; i + 2 < k; ++i) out[i] = folded[i];
    out[k - 2] = folded.back();
    out[k - 1] = folded[k - 2];
    check_level_drift(ctx, M, out);
    return out;
  }

  // Generic step: build the k-1 prefix polygon and hinge the new vertex
  // across the closing edge, on the far side.
  FiniteMetric M0(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = i + 1; j + 1 < k; ++j) M0.set(i, j, M(i, j));
  std::vector<ModelPoint> g0 = build(ctx, M0, depth + 1);
  const ModelPoint& u = g0[k - 2];
  const ModelPoint& v = g0[0];
  SideLabel polygon_side = SideLabel::On;
  for (const ModelPoint& gp : g0) {
    SideLabel s = side_of_line(u, v, gp);
    if (s != SideLabel::On) {
      polygon_side = s;
      break;
    }
  }
  SideLabel far_side = polygon_side == SideLabel::Left ? SideLabel::Right
                                                       : SideLabel::Left;
  ModelPoint p;
  try {
    p = place_point(u, v, M(k - 2, k - 1), M(k - 1, 0), far_side);
  } catch (const UnrealizableError&) {
    fail(MajorizeError::Kind::NotQuadruple, "pendant hinge not realizable",
         {k - 2, k - 1, 0});
  }

  bool crossing_prev = segments_intersect(p, g0[k - 3], u, v);
  bool crossing_next = segments_intersect(p, g0[1], u, v);
  if (crossing_prev && crossing_next) {
    std::vector<ModelPoint> out = g0;
    out.push_back(p);
    check_level_drift(ctx, M, out);
    return out;
  }

  // One of the two angle sums around the closing edge exceeds pi; fold at
  // the vertex with the larger excess.  The fold glues the hinge triangle
  // (u, p, v) to the polygon along [u, v]; distances in the glued space
  // feed the recursion.
  double sum_at_u = angle_at(g0[k - 3], u, v).radians +
                    angle_at(v, u, p).radians;
  double sum_at_v = angle_at(g0[1], v, u).radians +
                    angle_at(u, v, p).radians;
  GluedSpace glue =
      GluedSpace::along_segment(ctx.kappa, g0, u, v, p);
  GluePoint tp = glue.t_point(p);

  FoldPlan plan;
  plan.folded = FiniteMetric(k - 1);
  if (sum_at_u >= sum_at_v) {
    // Drop u: folded cycle (r_0 .. r_{k-3}, p).
    for (std::size_t i = 0; i + 1 < k - 1; ++i)
      for (std::size_t j = i + 1; j + 1 < k - 1; ++j)
        plan.folded.set(i, j, distance(g0[i], g0[j]));
    for (std::size_t i = 0; i + 2 < k - 1; ++i)
      plan.folded.set(i, k - 2, glue.distance(glue.s_point(g0[i]), tp));
    plan.folded.set(0, k - 2, distance(p, v));
    // The long edge runs through the dropped vertex; pin it to the exact
    // two-leg sum so the split below restores both edge lengths.
    plan.first_part = distance(g0[k - 3], u);
    plan.folded.set(k - 3, k - 2, plan.first_part + distance(u, p));
    plan.long_a = k - 3;
    plan.long_b = k - 2;
    std::vector<ModelPoint> folded = fold_and_split(ctx, plan, depth);
    std::vector<ModelPoint> out(k, folded.back());
    for (std::size_t i = 0; i + 2 < k; ++i) out[i] = folded[i];
    out[k - 2] = folded.back();
    out[k - 1] = folded[k - 2];
    check_level_drift(ctx, M, out);
    return out;
  }
  // Drop v: folded cycle (r_1 .. r_{k-2}, p), long edge (p, r_1).
  for (std::size_t i = 0; i + 1 < k - 1; ++i)
    for (std::size_t j = i + 1; j + 1 < k - 1; ++j)
      plan.folded.set(i, j, distance(g0[i + 1], g0[j + 1]));
  for (std::size_t i = 1; i + 2 < k - 1; ++i)
    plan.folded.set(i, k - 2, glue.distance(glue.s_point(g0[i + 1]), tp));
  plan.folded.set(k - 3, k - 2, distance(u, p));
  plan.first_part = distance(p, v);
  plan.folded.set(0, k - 2, plan.first_part + distance(v, g0[1]));
  plan.long_a = k - 2;
  plan.long_b = 0;
  std::vector<ModelPoint> folded = fold_and_split(ctx, plan, depth);
  std::vector<ModelPoint> out(k, folded.back());
  out[0] = folded.back();
  for (std::size_t i = 1; i < k; ++i) out[i] = folded[i - 1];
  check_level_drift(ctx, M, out);
  return out;
}

FiniteMetric induced_matrix(const FiniteMetric& D, const CyclicTuple& order) {
  FiniteMetric M(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      M.set(i, j, D(order[i], order[j]));
  return M;
}

// Canonicalize, verify, and classify a freshly built polygon.
MajorizeResult finalize_map(const FiniteMetric& D, const CyclicTuple& order,
                            std::vector<ModelPoint> points, Kappa kappa) {
  ComparisonMap cm;
  cm.kappa = kappa;
  cm.points = std::move(points);
  cm = canonicalize(cm);

  std::size_t n = order.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      scale = std::max(scale, D(order[i], order[j]));
  double tol = 1e-8 * (1.0 + scale);
  ConditionReport verify = cycl_n_verify(D, order, cm, tol);
  if (verify.failed()) {
    // A genuinely violating quadruple means the input was not a quadruple
    // space; otherwise the construction itself degraded.
    FiniteMetric M = induced_matrix(D, order);
    ConditionReport cat = cat4_check(M, kappa);
    if (cat.failed() && cat.witness) {
      return MajorizeError{MajorizeError::Kind::NotQuadruple,
                           cat.witness->indices,
                           "final verification: " + cat.witness->note};
    }
    std::vector<std::size_t> w =
        verify.witness ? verify.witness->indices : std::vector<std::size_t>{};
    return MajorizeError{MajorizeError::Kind::NumericalBreakdown, w,
                         "final verification failed without a quadruple witness"};
  }

  cm.edge_residuals.clear();
  cm.diag_slacks.clear();
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t ni = (i + 1) % n;
      cm.edge_residuals.push_back(distance(cm.points[i], cm.points[ni]) -
                                  D(order[i], order[ni]));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool consecutive = (j == i + 1) || (i == 0 && j == n - 1);
      if (consecutive) continue;
      cm.diag_slacks.push_back(distance(cm.points[i], cm.points[j]) -
                               D(order[i], order[j]));
    }
  cm.convexity_ok = true;
  return cm;
}

}  // namespace

MajorizeResult comparison_map(const FiniteMetric& D, const CyclicTuple& order,
                              Kappa kappa) {
  if (order.size() == 0) throw std::invalid_argument("empty cyclic tuple");
  for (std::size_t idx : order.indices)
    if (idx >= D.size()) throw std::invalid_argument("tuple index out of range");
  if (auto violation = validate(D))
    throw std::invalid_argument("invalid metric: " + violation->describe());
  std::size_t k = order.size();
  for (std::size_t i = 0; i < k && k > 1; ++i)
    if (D(order[i], order[(i + 1) % k]) <= 0.0)
      throw std::invalid_argument(
          "cyclic tuple with consecutive points at distance zero");
  if (perimeter(D, order) >= 2.0 * diameter(kappa))
    return MajorizeError{MajorizeError::Kind::PerimeterTooLarge, {}, ""};

  FiniteMetric M = induced_matrix(D, order);
  BuildContext ctx;
  ctx.kappa = kappa;
  ctx.scale = M.max_entry();
  ctx.max_depth = k + 1;
  ctx.call_budget = k >= 62 ? ~0ull : (1ull << k);
  ctx.zero_band = 1e-12 * (1.0 + ctx.scale);
  std::vector<ModelPoint> points;
  try {
    points = build(ctx, M, 0);
  } catch (const BuildFailure& f) {
    return f.error;
  }
  return finalize_map(D, order, std::move(points), kappa);
}

MajorizeResult majorize(const FiniteMetric& m, const CyclicTuple& t,
                        Kappa kappa) {
  if (t.size() == 0) throw std::invalid_argument("empty cyclic tuple");
  for (std::size_t idx : t.indices)
    if (idx >= m.size()) throw std::invalid_argument("tuple index out of range");
  if (auto violation = validate(m))
    throw std::invalid_argument("invalid metric: " + violation->describe());
  if (perimeter(m, t) >= 2.0 * diameter(kappa))
    return MajorizeError{MajorizeError::Kind::PerimeterTooLarge, {}, ""};

  DedupeResult dd = dedupe_consecutive(m, t);
  if (dd.tuple.size() == 1) {
    // Constant tuple: a constant polygon majorizes it.
    std::vector<ModelPoint> pts(t.size(), base_point(kappa));
    return finalize_map(m, t, std::move(pts), kappa);
  }
  MajorizeResult core = comparison_map(m, dd.tuple, kappa);
  if (!ok(core)) return core;
  const ComparisonMap& cm = map_of(core);
  std::vector<std::size_t> pos = dd.position_map(t.size());
  std::vector<ModelPoint> expanded;
  expanded.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    expanded.push_back(cm.points[pos[i]]);
  return finalize_map(m, t, std::move(expanded), kappa);
}

ComparisonMap canonicalize(const ComparisonMap& cm) {
  if (cm.points.empty())
    throw std::invalid_argument("cannot canonicalize an empty map");
  Kappa kappa = cm.kappa;
  const ModelPoint& g0 = cm.points.front();
  ComparisonMap out = cm;

  // Reference direction: the first point at positive distance from g0.
  std::size_t ref = cm.points.size();
  for (std::size_t j = 1; j < cm.points.size(); ++j)
    if (distance(g0, cm.points[j]) > 0.0) {
      ref = j;
      break;
    }
  if (ref == cm.points.size()) {
    for (auto& p : out.points) p = base_point(kappa);
    return out;
  }

  // Polar data (r_j, signed angle from the ray g0 -> ref), then a global
  // reflection putting the first off-line point on the Left.  Angles come
  // from tangent directions: they stay accurate for the near-collinear
  // polygons that side-length angle recovery handles poorly.
  std::vector<double> rs(cm.points.size()), phis(cm.points.size(), 0.0);
  double orientation = 0.0;
  for (std::size_t j = 0; j < cm.points.size(); ++j) {
    rs[j] = distance(g0, cm.points[j]);
    if (j == 0 || rs[j] == 0.0) continue;
    phis[j] =
        (j == ref) ? 0.0 : tangent_angle(g0, cm.points[ref], cm.points[j]);
    if (orientation == 0.0) {
      double sd = (j == ref) ? 0.0
                             : signed_line_distance(g0, cm.points[ref],
                                                    cm.points[j]);
      if (std::fabs(sd) > on_band(std::max(rs[j], rs[ref])))
        orientation = sd > 0.0 ? 1.0 : -1.0;
    }
  }
  if (orientation == 0.0) orientation = 1.0;
  for (std::size_t j = 0; j < cm.points.size(); ++j) {
    if (rs[j] == 0.0) {
      out.points[j] = base_point(kappa);
      continue;
    }
    out.points[j] = from_polar(kappa, rs[j], orientation * phis[j]);
  }
  return out;
}

}  // namespace km
