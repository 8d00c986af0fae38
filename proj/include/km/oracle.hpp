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

#ifndef KM_ORACLE_HPP
#define KM_ORACLE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "km/gluing.hpp"
#include "km/model_geometry.hpp"

namespace km {

// Brute-force and optimization baselines that cross-check the analytic
// shortcuts elsewhere, plus randomized drivers for the comparison-geometry
// lemmas the construction rests on.

// Minimum of the box-times form over a resolution x resolution grid.
double boxtimes_grid_min(double a, double b, double c, double e, double f,
                         double g, std::size_t resolution);

struct FeasibilityResult {
  bool feasible = false;
  std::array<ModelPoint, 4> configuration;
  double violation = 0.0;  // max constraint violation at the best point
};

// Direct numerical search for a model-surface quadruple with edges at most
// (a, b, c, e) and diagonals at least (f, g): multi-start coordinate-wise
// golden-section descent on the max constraint violation, the first vertex
// pinned at the base point and the second on the canonical ray.  Feasible
// iff the best violation is at most 1e-7 * (1 + scale).
FeasibilityResult cycl4_feasibility_numeric(double a, double b, double c,
                                            double e, double f, double g,
                                            Kappa kappa, std::uint64_t seed,
                                            int starts = 32);

// Minimum of d(a, z) + d(z, b) over `samples` equispaced seam points.
double seam_dense_min(const GluedSpace& g, const GluePoint& a,
                      const GluePoint& b, std::size_t samples);

enum class LemmaKind {
  AlexandrovLarger,   // matched edges, longer far diagonal => longer near one
  AlexandrovSmaller,  // matched edges, crossing, shorter near => shorter far
  Crossing,           // the two above force the diagonals to cross
  QuadrupleP,         // chord bound through any point of the diagonal
  AngleCalculus,      // additivity, diagonal split, full angle at a vertex
};

const char* to_string(LemmaKind k);
bool lemma_kind_from_string(const std::string& name, LemmaKind* out);

struct LemmaSuiteReport {
  LemmaKind kind;
  double kappa = 0.0;
  std::size_t trials = 0;
  std::size_t completed = 0;
  std::size_t skipped = 0;   // hypothesis sampling hit the rejection cap
  std::size_t failures = 0;
  double worst_violation = 0.0;
  std::string first_failure;

  bool clean() const { return failures == 0; }
};

// Samples configurations satisfying the lemma hypotheses (rejection
// sampling, capped at 1e6 attempts per trial) and checks the conclusion
// within 1e-8.
LemmaSuiteReport lemma_property_suite(LemmaKind kind, Kappa kappa,
                                      std::size_t trials, std::uint64_t seed);

}  // namespace km

#endif  // KM_ORACLE_HPP
