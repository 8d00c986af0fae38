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

#include "km/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace km {

namespace {

FiniteMetric finalize_matrix(std::size_t n, std::vector<double> entries) {
  FiniteMetric m(n, std::move(entries));
  if (auto violation = validate(m))
    throw InputError("matrix is not a metric: " + violation->describe());
  return m;
}

ParsedMetric parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty matrix file");
  std::size_t n = 0;
  try {
    n = static_cast<std::size_t>(std::stoul(line));
  } catch (const std::exception&) {
    throw InputError("first CSV row must be the point count");
  }
  if (n == 0) throw InputError("matrix must have at least one point");
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    if (!std::getline(in, line))
      throw InputError("missing matrix row " + std::to_string(row));
    std::istringstream cells(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(cells, cell, ',')) {
      try {
        entries.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError("bad decimal in row " + std::to_string(row) +
                         ", column " + std::to_string(col));
      }
      ++col;
    }
    if (col != n)
      throw InputError("row " + std::to_string(row) + " has " +
                       std::to_string(col) + " cells, expected " +
                       std::to_string(n));
  }
  ParsedMetric out;
  out.metric = finalize_matrix(n, std::move(entries));
  return out;
}

ParsedMetric parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix"))
    throw InputError("JSON matrix files need a \"matrix\" member");
  const auto& rows = doc["matrix"];
  if (!rows.is_array() || rows.empty())
    throw InputError("\"matrix\" must be a non-empty array of rows");
  std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n)
      throw InputError("matrix rows must all have length " +
                       std::to_string(n));
    for (const auto& cell : row) {
      if (!cell.is_number()) throw InputError("matrix cells must be numbers");
      entries.push_back(cell.get<double>());
    }
  }
  ParsedMetric out;
  if (doc.contains("labels")) {
    const auto& labels = doc["labels"];
    if (!labels.is_array() || labels.size() != n)
      throw InputError("\"labels\" must list one name per point");
    for (const auto& l : labels) out.labels.push_back(l.get<std::string>());
  }
  out.metric = finalize_matrix(n, std::move(entries));
  return out;
}

}  // namespace

ParsedMetric parse_matrix_text(const std::string& text, bool json) {
  return json ? parse_json(text) : parse_csv(text);
}

ParsedMetric parse_matrix_file(const std::string& path) {
  std::string text = read_file(path);
  // JSON files start with an object; CSV with the point count.
  std::size_t i = text.find_first_not_of(" \t\r\n");
  bool json = i != std::string::npos && text[i] == '{';
  return parse_matrix_text(text, json);
}

std::string matrix_to_csv(const FiniteMetric& m) {
  std::string out = std::to_string(m.size()) + "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += JsonWriter::number(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string JsonWriter::number(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::comma() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  comma();
  out_ += '"';
  out_ += k;
  out_ += "\":";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  comma();
  out_ += number(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  comma();
  out_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      default: out_ += c;
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::raw_null() {
  comma();
  out_ += "null";
  return *this;
}

std::string JsonWriter::take() { return std::move(out_); }

void write_condition_report(JsonWriter& w, const ConditionReport& r) {
  w.begin_object();
  w.key("condition").value(r.condition);
  w.key("kappa").value(r.kappa);
  w.key("verdict").value(to_string(r.verdict));
  w.key("worst_margin").value(r.worst_margin);
  w.key("boundary").value(r.boundary);
  w.key("witness");
  if (r.witness) {
    w.begin_object();
    w.key("indices").begin_array();
    for (std::size_t i : r.witness->indices) w.value(i);
    w.end_array();
    w.key("params").begin_object();
    for (const auto& [k, v] : r.witness->params) w.key(k).value(v);
    w.end_object();
    w.key("margin").value(r.witness->margin);
    if (!r.witness->note.empty()) w.key("note").value(r.witness->note);
    w.end_object();
  } else {
    w.raw_null();
  }
  w.end_object();
}

const char* model_name(Kappa kappa) {
  if (kappa.spherical()) return "sphere";
  if (kappa.hyperbolic()) return "hyperboloid";
  return "plane";
}

void write_comparison_map(JsonWriter& w, const ComparisonMap& cm) {
  w.begin_object();
  w.key("kappa").value(cm.kappa.value);
  w.key("model").value(model_name(cm.kappa));
  w.key("points").begin_array();
  for (const ModelPoint& p : cm.points) {
    w.begin_array();
    w.value(p.c[0]);
    w.value(p.c[1]);
    if (!cm.kappa.flat()) w.value(p.c[2]);
    w.end_array();
  }
  w.end_array();
  w.key("edge_residuals").begin_array();
  for (double r : cm.edge_residuals) w.value(r);
  w.end_array();
  w.key("diag_slacks").begin_array();
  for (double s : cm.diag_slacks) w.value(s);
  w.end_array();
  w.key("convexity_ok").value(cm.convexity_ok);
  w.end_object();
}

void write_majorize_error(JsonWriter& w, const MajorizeError& e) {
  w.begin_object();
  const char* kind = "numerical_breakdown";
  if (e.kind == MajorizeError::Kind::PerimeterTooLarge)
    kind = "perimeter_too_large";
  else if (e.kind == MajorizeError::Kind::NotQuadruple)
    kind = "not_quadruple";
  w.key("error").value(kind);
  w.key("detail").value(e.describe());
  w.key("witness").begin_array();
  for (std::size_t i : e.witness) w.value(i);
  w.end_array();
  w.end_object();
}

void write_lemma_report(JsonWriter& w, const LemmaSuiteReport& r) {
  w.begin_object();
  w.key("suite").value(to_string(r.kind));
  w.key("kappa").value(r.kappa);
  w.key("trials").value(r.trials);
  w.key("completed").value(r.completed);
  w.key("skipped").value(r.skipped);
  w.key("failures").value(r.failures);
  w.key("worst_violation").value(r.worst_violation);
  if (!r.first_failure.empty()) w.key("first_failure").value(r.first_failure);
  w.end_object();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

}  // namespace km
