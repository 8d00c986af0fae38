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

#ifndef KM_MAJORIZE_HPP
#define KM_MAJORIZE_HPP

#include <string>
#include <variant>
#include <vector>

#include "km/finite_metric.hpp"
#include "km/model_geometry.hpp"

namespace km {

// Convex comparison polygon for a cyclic tuple: the cycle edges are
// realized exactly, no chord is shorter than the metric distance, and
// every chord from a vertex meets the chord spanned by the vertex's
// neighbors (a convexity condition that also covers degenerate polygons).
struct ComparisonMap {
  Kappa kappa;
  std::vector<ModelPoint> points;
  // Signed residual d_model(g_i, g_{i+1}) - d_X per cycle edge.
  std::vector<double> edge_residuals;
  // Slack d_model(g_i, g_j) - d_X per non-adjacent pair (i, j), i < j, in
  // lexicographic order.
  std::vector<double> diag_slacks;
  bool convexity_ok = true;
};

struct MajorizeError {
  enum class Kind { PerimeterTooLarge, NotQuadruple, NumericalBreakdown };
  Kind kind;
  // NotQuadruple: a quadruple labeling violating the kappa-quadruple
  // condition (tuple positions).
  std::vector<std::size_t> witness;
  std::string step;
  std::string describe() const;
};

using MajorizeResult = std::variant<ComparisonMap, MajorizeError>;

inline bool ok(const MajorizeResult& r) {
  return std::holds_alternative<ComparisonMap>(r);
}
inline const ComparisonMap& map_of(const MajorizeResult& r) {
  return std::get<ComparisonMap>(r);
}
inline const MajorizeError& error_of(const MajorizeResult& r) {
  return std::get<MajorizeError>(r);
}

// Builds a comparison map for `order` (consecutive points distinct, i.e.
// every cyclic edge positive) by induction on the tuple length:
// triangles and shorter embed directly; each longer tuple places the new
// vertex across the closing edge and either accepts the polygon or folds
// the offending vertex through a Reshetnyak gluing and recurses.
// Preconditions: D valid, perimeter < 2 * diameter, no zero cyclic edge.
MajorizeResult comparison_map(const FiniteMetric& D, const CyclicTuple& order,
                              Kappa kappa);

// comparison_map composed with collapsing of zero-length cyclic edges and
// re-expansion of the result over the collapsed runs.  Constant tuples map
// to a constant polygon.
MajorizeResult majorize(const FiniteMetric& m, const CyclicTuple& t,
                        Kappa kappa);

// Applies the isometry moving g_0 to the base point, the first point
// distinct from g_0 onto the canonical ray, and the first off-ray point to
// the Left side.  Pairwise distances are unchanged; idempotent.
ComparisonMap canonicalize(const ComparisonMap& cm);

}  // namespace km

#endif  // KM_MAJORIZE_HPP
