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

#include "km/finite_metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace km {

FiniteMetric::FiniteMetric(std::size_t n, std::vector<double> entries)
    : n_(n), d_(std::move(entries)) {
  if (d_.size() != n * n)
    throw std::invalid_argument("distance matrix size mismatch");
}

double FiniteMetric::max_entry() const {
  double m = 0.0;
  for (double v : d_) m = std::max(m, v);
  return m;
}

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::NegativeEntry:
      os << "negative entry at (" << i << "," << j << ")";
      break;
    case Kind::Diagonal:
      os << "nonzero diagonal at (" << i << "," << i << ")";
      break;
    case Kind::Symmetry:
      os << "asymmetry at (" << i << "," << j << ")";
      break;
    case Kind::Triangle:
      os << "triangle inequality violated: d(" << i << "," << k << ") > d("
         << i << "," << j << ") + d(" << j << "," << k << ")";
      break;
  }
  os << " by " << magnitude;
  return os.str();
}

std::optional<MetricViolation> validate(const FiniteMetric& m) {
  std::size_t n = m.size();
  using Kind = MetricViolation::Kind;
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != 0.0)
      return MetricViolation{Kind::Diagonal, i, i, 0, std::fabs(m(i, i))};
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i))
        return MetricViolation{Kind::Symmetry, i, j, 0,
                               std::fabs(m(i, j) - m(j, i))};
      if (m(i, j) < 0.0)
        return MetricViolation{Kind::NegativeEntry, i, j, 0, -m(i, j)};
    }
  }
  double band = 1e-9 * m.max_entry();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        double slack = m(i, j) + m(j, k) - m(i, k);
        if (slack < -band)
          return MetricViolation{Kind::Triangle, i, j, k, -slack};
      }
    }
  return std::nullopt;
}

FiniteMetric snowflake(const FiniteMetric& m, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("snowflake exponent must lie in (0, 1]");
  FiniteMetric out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      out.set(i, j, std::pow(m(i, j), alpha));
  return out;
}

double perimeter(const FiniteMetric& m, const CyclicTuple& t) {
  std::size_t n = t.size();
  if (n <= 1) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += m(t[i], t[(i + 1) % n]);
  return sum;
}

std::vector<std::size_t> DedupeResult::position_map(
    std::size_t original_size) const {
  std::vector<std::size_t> map(original_size);
  std::size_t pos = start;
  for (std::size_t l = 0; l < run_lengths.size(); ++l)
    for (std::size_t r = 0; r < run_lengths[l]; ++r) {
      map[pos % original_size] = l;
      ++pos;
    }
  return map;
}

DedupeResult dedupe_consecutive(const FiniteMetric& m, const CyclicTuple& t) {
  std::size_t n = t.size();
  if (n == 0) throw std::invalid_argument("empty cyclic tuple");
  // Constant tuple (all cyclic edges of length zero) collapses to a point.
  bool constant = true;
  for (std::size_t i = 0; i < n && constant; ++i)
    constant = m(t[i], t[(i + 1) % n]) == 0.0;
  if (constant) return DedupeResult{CyclicTuple{{t[0]}}, {n}, 0};

  // Start each run at a position whose incoming edge has positive length.
  std::size_t start = 0;
  while (m(t[(start + n - 1) % n], t[start]) == 0.0) ++start;
  DedupeResult out;
  out.start = start;
  std::size_t i = 0;
  while (i < n) {
    std::size_t pos = (start + i) % n;
    out.tuple.indices.push_back(t[pos]);
    std::size_t run = 1;
    while (i + run < n &&
           m(t[(start + i + run - 1) % n], t[(start + i + run) % n]) == 0.0)
      ++run;
    out.run_lengths.push_back(run);
    i += run;
  }
  return out;
}

std::pair<FiniteMetric, std::vector<ModelPoint>> sample_model_subset(
    std::size_t n, Kappa kappa, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Radius of the sampling ball.  For kappa > 0 any cyclic tuple through k
  // of the n points has perimeter <= k * 2R, so R = 0.9 * D / n keeps every
  // tuple below 2D with margin.
  double radius = 1.25;
  if (kappa.spherical()) {
    double dk = diameter(kappa);
    radius = 0.9 * dk / static_cast<double>(std::max<std::size_t>(n, 2));
  } else if (kappa.hyperbolic()) {
    radius = 1.25 / std::sqrt(-kappa.value);
  }
  std::vector<ModelPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = radius * std::sqrt(unit(rng));
    double phi = 2.0 * 3.14159265358979323846 * unit(rng);
    pts.push_back(from_polar(kappa, r, phi));
  }
  FiniteMetric m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m.set(i, j, distance(pts[i], pts[j]));
  return {std::move(m), std::move(pts)};
}

}  // namespace km
