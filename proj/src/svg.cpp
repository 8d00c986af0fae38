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

#include "km/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace km {

namespace {

constexpr int kEdgeSamples = 64;

struct Planar {
  double x, y;
};

Planar project(const ModelPoint& p, Projection proj) {
  switch (proj) {
    case Projection::Plane:
      return {p.c[0], p.c[1]};
    case Projection::Orthographic:
      // Equatorial-plane projection of the hemisphere around the pole.
      return {p.c[0], p.c[1]};
    case Projection::Poincare: {
      // Hyperboloid (t, x, y) -> disk (x, y) / (rho + t); image lies in
      // the open unit disk.
      double rho = p.kappa.radius();
      return {p.c[1] / (rho + p.c[0]), p.c[2] / (rho + p.c[0])};
    }
    default:
      return {p.c[0], p.c[1]};
  }
}

std::string fmt(double v) {
  // Fixed decimals keep the output bytes stable and diff-friendly.
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v + 0.0);  // normalize -0
  return buf;
}

}  // namespace

bool projection_from_string(const std::string& name, Projection* out) {
  if (name == "auto") *out = Projection::Auto;
  else if (name == "plane") *out = Projection::Plane;
  else if (name == "poincare") *out = Projection::Poincare;
  else if (name == "orthographic") *out = Projection::Orthographic;
  else return false;
  return true;
}

std::string render_svg(const ComparisonMap& cm, Projection projection,
                       int size_px) {
  if (cm.points.empty()) throw std::invalid_argument("empty comparison map");
  Projection proj = projection;
  if (proj == Projection::Auto) {
    if (cm.kappa.spherical()) proj = Projection::Orthographic;
    else if (cm.kappa.hyperbolic()) proj = Projection::Poincare;
    else proj = Projection::Plane;
  }
  std::size_t n = cm.points.size();

  // Sample all geodesic edges first so the viewport covers them.
  std::vector<std::vector<Planar>> edges;
  for (std::size_t i = 0; i < n && n >= 2; ++i) {
    std::size_t ni = (i + 1) % n;
    std::vector<Planar> polyline;
    if (distance(cm.points[i], cm.points[ni]) == 0.0) {
      polyline.push_back(project(cm.points[i], proj));
      polyline.push_back(project(cm.points[ni], proj));
    } else {
      for (int s = 0; s <= kEdgeSamples; ++s) {
        double t = static_cast<double>(s) / kEdgeSamples;
        polyline.push_back(
            project(interpolate(cm.points[i], cm.points[ni], t), proj));
      }
    }
    edges.push_back(std::move(polyline));
  }

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  auto grow = [&](const Planar& p) {
    if (first) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
      first = false;
      return;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const auto& e : edges)
    for (const auto& p : e) grow(p);
  for (const auto& mp : cm.points) grow(project(mp, proj));
  double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  double margin = 0.08 * span;
  min_x -= margin;
  min_y -= margin;
  span += 2 * margin;
  double px = static_cast<double>(size_px);
  auto to_px = [&](const Planar& p) -> Planar {
    // y grows upward in the model, downward in SVG.
    return {(p.x - min_x) / span * px,
            px - (p.y - min_y) / span * px};
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px
      << "\" height=\"" << size_px << "\" viewBox=\"0 0 " << size_px << " "
      << size_px << "\">\n";
  if (proj == Projection::Poincare) {
    // Unit-disk boundary for orientation.
    Planar c = to_px({0.0, 0.0});
    double r = 1.0 / span * px;
    svg << "  <circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y)
        << "\" r=\"" << fmt(r) << "\" fill=\"none\" stroke=\"#cccccc\""
        << " stroke-width=\"1\"/>\n";
  }
  for (const auto& e : edges) {
    svg << "  <polyline fill=\"none\" stroke=\"#1f3d7a\" stroke-width=\"1.5\""
        << " points=\"";
    for (std::size_t i = 0; i < e.size(); ++i) {
      Planar p = to_px(e[i]);
      if (i) svg << ' ';
      svg << fmt(p.x) << ',' << fmt(p.y);
    }
    svg << "\"/>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    Planar p = to_px(project(cm.points[i], proj));
    svg << "  <circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
        << "\" r=\"3\" fill=\"#b03030\"/>\n";
    svg << "  <text x=\"" << fmt(p.x + 5) << "\" y=\"" << fmt(p.y - 5)
        << "\" font-size=\"12\" font-family=\"monospace\">" << i
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace km
