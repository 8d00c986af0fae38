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

#ifndef KM_SVG_HPP
#define KM_SVG_HPP

#include <string>

#include "km/majorize.hpp"

namespace km {

enum class Projection { Auto, Plane, Poincare, Orthographic };

bool projection_from_string(const std::string& name, Projection* out);

// Renders the comparison polygon as a standalone SVG document.  Geodesic
// edges are drawn as polylines sampled at 64 points via interpolate();
// vertices are labeled by index.  Projections: identity for the plane,
// Poincare disk for the hyperboloid, orthographic for the sphere; Auto
// picks by curvature sign.  Output bytes are deterministic.
std::string render_svg(const ComparisonMap& cm,
                       Projection projection = Projection::Auto,
                       int size_px = 480);

}  // namespace km

#endif  // KM_SVG_HPP
