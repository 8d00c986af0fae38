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

#ifndef KM_TOLERANCE_HPP
#define KM_TOLERANCE_HPP

namespace km {

// Global absolute tolerance for lengths and angles in predicates.
// Defaults to 1e-9; the KM_TOL environment variable (read once, on first
// use) or set_global_tolerance() override it.
double global_tolerance();
void set_global_tolerance(double tol);

// Margins inside this band are flagged as "boundary" in condition reports.
inline constexpr double kBoundaryBand = 1e-7;

// Tolerance band scaled by the magnitude of the inputs.  Predicates that
// compare lengths use |margin| <= on_band(scale).
inline double on_band(double scale) {
  return global_tolerance() * (1.0 + (scale > 0 ? scale : 0.0));
}

}  // namespace km

#endif  // KM_TOLERANCE_HPP
