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

#ifndef KM_FINITE_METRIC_HPP
#define KM_FINITE_METRIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "km/model_geometry.hpp"

namespace km {

// Finite (pseudo)metric space as a dense symmetric distance matrix with
// zero diagonal.  Distinct points at distance zero are permitted; they act
// as repeated values of a cyclic map.
class FiniteMetric {
 public:
  FiniteMetric() = default;
  explicit FiniteMetric(std::size_t n) : n_(n), d_(n * n, 0.0) {}
  FiniteMetric(std::size_t n, std::vector<double> entries);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return d_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }
  double max_entry() const;
  const std::vector<double>& raw() const { return d_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

struct MetricViolation {
  enum class Kind { NegativeEntry, Diagonal, Symmetry, Triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;  // witness indices; k used for Triangle
  double magnitude = 0.0;
  std::string describe() const;
};

// Checks symmetry, zero diagonal, nonnegativity and the triangle inequality
// (within a relative band of 1e-9 * max entry).  Returns the first
// violation found, or nullopt.
std::optional<MetricViolation> validate(const FiniteMetric& m);

// Entrywise power d^alpha, alpha in (0, 1].  Concavity of t^alpha keeps
// the result a valid metric.
FiniteMetric snowflake(const FiniteMetric& m, double alpha);

// Ordered index sequence into a FiniteMetric, read cyclically.  Repeated
// indices are allowed.
struct CyclicTuple {
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
  std::size_t operator[](std::size_t i) const { return indices[i]; }
};

// Sum of consecutive cyclic distances.
double perimeter(const FiniteMetric& m, const CyclicTuple& t);

// Result of collapsing cyclically-consecutive points at distance zero.
// The original tuple is recovered by repeating tuple[l] over run_lengths[l]
// consecutive positions, starting at original position `start`:
// original position (start + run_lengths[0] + ... + run_lengths[l-1] + r)
// mod N holds tuple[l], for r < run_lengths[l].
struct DedupeResult {
  CyclicTuple tuple;
  std::vector<std::size_t> run_lengths;
  std::size_t start = 0;

  // Deduped position owning each original position.
  std::vector<std::size_t> position_map(std::size_t original_size) const;
};

DedupeResult dedupe_consecutive(const FiniteMetric& m, const CyclicTuple& t);

// Samples n points of the model surface (deterministically from the seed)
// and returns their pairwise distance matrix plus the ground-truth points.
// For kappa > 0 the points stay inside a ball small enough that every
// cyclic tuple through them has perimeter < 2 * diameter.
std::pair<FiniteMetric, std::vector<ModelPoint>> sample_model_subset(
    std::size_t n, Kappa kappa, std::uint64_t seed);

}  // namespace km

#endif  // KM_FINITE_METRIC_HPP
