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

#ifndef KM_IO_HPP
#define KM_IO_HPP

#include <string>
#include <vector>

#include "km/conditions.hpp"
#include "km/finite_metric.hpp"
#include "km/majorize.hpp"
#include "km/oracle.hpp"

namespace km {

// Thrown on malformed input files or failed matrix validation; the CLI
// maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct ParsedMetric {
  FiniteMetric metric;
  std::vector<std::string> labels;  // empty unless the file provided them
};

// Distance matrix files: CSV (first row "n", then n rows of n decimals) or
// JSON {"labels": [...], "matrix": [[...]]}.  Validated on load.
ParsedMetric parse_matrix_file(const std::string& path);
ParsedMetric parse_matrix_text(const std::string& text, bool json);

// CSV serialization (17 significant digits, newline terminated rows).
std::string matrix_to_csv(const FiniteMetric& m);

// Minimal append-only JSON writer with a fixed number format: doubles are
// rendered with up to 17 significant digits so values round-trip and
// output bytes are stable across runs.
class JsonWriter {
 public:
  std::string take();

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::size_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& raw_null();

  static std::string number(double v);

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_;  // per open container
  bool after_key_ = false;
};

// JSON shapes used by the CLI and the python bindings.
void write_condition_report(JsonWriter& w, const ConditionReport& r);
void write_comparison_map(JsonWriter& w, const ComparisonMap& cm);
void write_majorize_error(JsonWriter& w, const MajorizeError& e);
void write_lemma_report(JsonWriter& w, const LemmaSuiteReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Model name for a curvature sign: plane / sphere / hyperboloid.
const char* model_name(Kappa kappa);

}  // namespace km

#endif  // KM_IO_HPP
