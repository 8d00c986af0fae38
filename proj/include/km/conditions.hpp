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

#ifndef KM_CONDITIONS_HPP
#define KM_CONDITIONS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "km/finite_metric.hpp"
#include "km/model_geometry.hpp"

namespace km {

// Decision procedures for the comparison conditions of a finite metric
// space: the box-times (weighted quadruple) inequalities, the discrete
// Wirtinger inequalities, the kappa-quadruple condition, and the CAT(kappa)
// four-point / Cycl_4(kappa) condition.  Every verdict carries a signed
// margin; failures carry a witness.

enum class Verdict : std::uint8_t { Pass, Fail, Exempt };

const char* to_string(Verdict v);

struct Witness {
  std::vector<std::size_t> indices;
  std::map<std::string, double> params;
  double margin = 0.0;
  std::string note;
};

struct ConditionReport {
  std::string condition;
  double kappa = 0.0;
  Verdict verdict = Verdict::Pass;
  std::optional<Witness> witness;
  // Most negative margin seen over all checked instances; nonnegative
  // margins mean the inequality held with room to spare.
  double worst_margin = 0.0;
  // Set when the worst margin sits inside the +-1e-7 boundary band, i.e.
  // the verdict should not be trusted as an exact symbolic answer.
  bool boundary = false;

  bool failed() const { return verdict == Verdict::Fail; }
};

// Four indices of a cycle x -> y -> z -> w together with the six induced
// distances.  The diagonal (x, z) is the matched one; (y, w) is estimated.
// A different diagonal choice is expressed by relabeling the cycle.
struct QuadrupleLabeling {
  std::size_t x = 0, y = 0, z = 0, w = 0;
  double xy = 0, yz = 0, zw = 0, wx = 0;  // edges
  double xz = 0;                          // matched diagonal
  double yw = 0;                          // estimated diagonal

  static QuadrupleLabeling from_metric(const FiniteMetric& m, std::size_t x,
                                       std::size_t y, std::size_t z,
                                       std::size_t w);
  double edge_perimeter() const { return xy + yz + zw + wx; }
};

// Value of the (W_nj) combination for the tuple t:
//   sin^2(j pi / n) * sum d(f(i), f(i+1))^2
//     - sin^2(pi / n) * sum d(f(i), f(i+j))^2,
// with n the tuple length.  The Wir_n inequalities hold iff this is
// nonnegative for every j in [2, n-2].
double wir_value(const FiniteMetric& m, const CyclicTuple& t, std::size_t j);

enum class WirMode { InjectiveTuples, AllMaps };

// Checks the Wir_n inequalities for every map f : Z/nZ -> X in the chosen
// enumeration mode.  AllMaps enumerates |X|^n maps; both modes refuse to
// exceed the evaluation budget.
ConditionReport wir_check(const FiniteMetric& m, std::size_t n,
                          WirMode mode = WirMode::InjectiveTuples,
                          std::uint64_t budget = 10'000'000);

// Quadratic form of the box-times inequality at parameters (s, t):
//   (1-t)(1-s) a^2 + t(1-s) b^2 + ts c^2 + (1-t)s e^2
//     - t(1-t) f^2 - s(1-s) g^2
// for edges a, b, c, e and diagonals f, g.
double boxtimes_value(double a, double b, double c, double e, double f,
                      double g, double s, double t);

struct BoxtimesMin {
  double value = 0.0;
  double s = 0.0;
  double t = 0.0;
};

// Exact global minimum of boxtimes_value over [0,1]^2: the interior
// stationary point of the quadratic, the four edge minimizers, and the
// four corners are evaluated and the least is returned.
BoxtimesMin boxtimes_min(double a, double b, double c, double e, double f,
                         double g);

// Box-times check over every quadruple of distinct points (all three
// diagonal pairings per 4-subset; the remaining labelings are equivalent
// under the symmetries of the form).
ConditionReport boxtimes_check(const FiniteMetric& m);

// kappa-quadruple condition for one labeling: subembed the two triangles
// (xy, yz, xz) and (zw, wx, xz) on opposite sides of the matched diagonal;
// if the diagonals of the resulting quadrilateral cross, the estimated
// diagonal must not exceed its model length.
ConditionReport quadruple_check(const QuadrupleLabeling& q, Kappa kappa);

// CAT(kappa) 4-point condition: quadruple_check over every 4-subset, every
// cyclic labeling, and both diagonal choices.
ConditionReport cat4_check(const FiniteMetric& m, Kappa kappa);

// Cycl_4(kappa) condition, decided through the equivalent CAT(kappa)
// 4-point form.
ConditionReport cycl4_check(const FiniteMetric& m, Kappa kappa);

struct ComparisonMap;  // defined in km/majorize.hpp

// Verifies a candidate comparison map for tuple t: edge lengths realized
// exactly (within tol), chord lengths not shorter (within tol), and the
// convexity condition [g(i), g(j)] meets [g(i-1), g(i+1)] for all i != j.
// tol < 0 selects 1e-8 * (largest tuple distance).
ConditionReport cycl_n_verify(const FiniteMetric& m, const CyclicTuple& t,
                              const ComparisonMap& g, double tol = -1.0);

// Right side minus left side of the aligned-triple quadratic inequality:
// with t = d(x,y)/d(x,z) and d(x,z) = d(x,y) + d(y,z),
//   (1-t) d(x,w)^2 + t d(z,w)^2 - t(1-t) d(x,z)^2 - d(y,w)^2.
// Nonnegative whenever m satisfies the box-times inequalities.
double midpoint_inequality_value(const FiniteMetric& m, std::size_t x,
                                 std::size_t y, std::size_t z, std::size_t w);

}  // namespace km

#endif  // KM_CONDITIONS_HPP
