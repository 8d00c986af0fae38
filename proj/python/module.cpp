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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "km/conditions.hpp"
#include "km/io.hpp"
#include "km/majorize.hpp"
#include "km/oracle.hpp"
#include "km/svg.hpp"

namespace py = pybind11;

namespace {

km::FiniteMetric metric_from_rows(const std::vector<std::vector<double>>& rows) {
  std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n)
      throw std::invalid_argument("matrix rows must all have length n");
    for (double v : row) entries.push_back(v);
  }
  km::FiniteMetric m(n, std::move(entries));
  if (auto violation = km::validate(m))
    throw std::invalid_argument("matrix is not a metric: " +
                                violation->describe());
  return m;
}

std::vector<std::vector<double>> metric_to_rows(const km::FiniteMetric& m) {
  std::vector<std::vector<double>> rows(m.size(),
                                        std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) rows[i][j] = m(i, j);
  return rows;
}

km::CyclicTuple tuple_of(const std::vector<std::size_t>& idx) {
  return km::CyclicTuple{idx};
}

py::dict report_to_dict(const km::ConditionReport& r) {
  py::dict d;
  d["condition"] = r.condition;
  d["kappa"] = r.kappa;
  d["verdict"] = km::to_string(r.verdict);
  d["worst_margin"] = r.worst_margin;
  d["boundary"] = r.boundary;
  if (r.witness) {
    py::dict w;
    w["indices"] = r.witness->indices;
    w["params"] = r.witness->params;
    w["margin"] = r.witness->margin;
    w["note"] = r.witness->note;
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

py::dict map_to_dict(const km::ComparisonMap& cm) {
  py::dict d;
  d["kappa"] = cm.kappa.value;
  d["model"] = km::model_name(cm.kappa);
  std::vector<std::vector<double>> pts;
  for (const auto& p : cm.points) {
    if (cm.kappa.flat())
      pts.push_back({p.c[0], p.c[1]});
    else
      pts.push_back({p.c[0], p.c[1], p.c[2]});
  }
  d["points"] = pts;
  d["edge_residuals"] = cm.edge_residuals;
  d["diag_slacks"] = cm.diag_slacks;
  d["convexity_ok"] = cm.convexity_ok;
  return d;
}

km::ComparisonMap map_from_dict(const py::dict& d) {
  km::ComparisonMap cm;
  cm.kappa = km::Kappa(d["kappa"].cast<double>());
  for (const auto& row : d["points"].cast<std::vector<std::vector<double>>>()) {
    km::ModelPoint p;
    p.kappa = cm.kappa;
    if (row.size() < 2) throw std::invalid_argument("points need 2+ coords");
    p.c = {row[0], row[1], row.size() > 2 ? row[2] : 0.0};
    cm.points.push_back(p);
  }
  return cm;
}

}  // namespace

PYBIND11_MODULE(kappamaj, m) {
  m.doc() =
      "Comparison-geometry conditions and convex comparison polygons for "
      "finite metric spaces over the constant-curvature model surfaces.";

  m.def(
      "validate",
      [](const std::vector<std::vector<double>>& rows) -> py::object {
        std::size_t n = rows.size();
        std::vector<double> entries;
        for (const auto& row : rows)
          for (double v : row) entries.push_back(v);
        km::FiniteMetric metric(n, std::move(entries));
        auto violation = km::validate(metric);
        if (!violation) return py::none();
        return py::str(violation->describe());
      },
      py::arg("matrix"),
      "None when the matrix is a metric, else a description of the "
      "violation.");

  m.def(
      "snowflake",
      [](const std::vector<std::vector<double>>& rows, double alpha) {
        return metric_to_rows(km::snowflake(metric_from_rows(rows), alpha));
      },
      py::arg("matrix"), py::arg("alpha"));

  m.def(
      "sample_model_subset",
      [](std::size_t n, double kappa, std::uint64_t seed) {
        auto [metric, pts] = km::sample_model_subset(n, km::Kappa(kappa), seed);
        std::vector<std::vector<double>> coords;
        for (const auto& p : pts) coords.push_back({p.c[0], p.c[1], p.c[2]});
        return py::make_tuple(metric_to_rows(metric), coords);
      },
      py::arg("n"), py::arg("kappa"), py::arg("seed"));

  m.def(
      "wir_value",
      [](const std::vector<std::vector<double>>& rows,
         const std::vector<std::size_t>& tuple, std::size_t j) {
        return km::wir_value(metric_from_rows(rows), tuple_of(tuple), j);
      },
      py::arg("matrix"), py::arg("tuple"), py::arg("j"));

  m.def(
      "wir_check",
      [](const std::vector<std::vector<double>>& rows, std::size_t n) {
        return report_to_dict(km::wir_check(metric_from_rows(rows), n));
      },
      py::arg("matrix"), py::arg("n"));

  m.def("boxtimes_value", &km::boxtimes_value, py::arg("a"), py::arg("b"),
        py::arg("c"), py::arg("e"), py::arg("f"), py::arg("g"), py::arg("s"),
        py::arg("t"));

  m.def(
      "boxtimes_min",
      [](double a, double b, double c, double e, double f, double g) {
        km::BoxtimesMin bm = km::boxtimes_min(a, b, c, e, f, g);
        return py::make_tuple(bm.value, bm.s, bm.t);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("e"), py::arg("f"),
      py::arg("g"));

  m.def(
      "boxtimes_check",
      [](const std::vector<std::vector<double>>& rows) {
        return report_to_dict(km::boxtimes_check(metric_from_rows(rows)));
      },
      py::arg("matrix"));

  m.def(
      "cycl4_check",
      [](const std::vector<std::vector<double>>& rows, double kappa) {
        return report_to_dict(
            km::cycl4_check(metric_from_rows(rows), km::Kappa(kappa)));
      },
      py::arg("matrix"), py::arg("kappa"));

  m.def(
      "cat4_check",
      [](const std::vector<std::vector<double>>& rows, double kappa) {
        return report_to_dict(
            km::cat4_check(metric_from_rows(rows), km::Kappa(kappa)));
      },
      py::arg("matrix"), py::arg("kappa"));

  m.def(
      "majorize",
      [](const std::vector<std::vector<double>>& rows,
         const std::vector<std::size_t>& tuple, double kappa) -> py::dict {
        km::MajorizeResult res = km::majorize(metric_from_rows(rows),
                                              tuple_of(tuple),
                                              km::Kappa(kappa));
        if (km::ok(res)) {
          py::dict d = map_to_dict(km::map_of(res));
          d["ok"] = true;
          return d;
        }
        py::dict d;
        d["ok"] = false;
        const km::MajorizeError& e = km::error_of(res);
        d["error"] = e.kind == km::MajorizeError::Kind::PerimeterTooLarge
                         ? "perimeter_too_large"
                     : e.kind == km::MajorizeError::Kind::NotQuadruple
                         ? "not_quadruple"
                         : "numerical_breakdown";
        d["detail"] = e.describe();
        d["witness"] = e.witness;
        return d;
      },
      py::arg("matrix"), py::arg("tuple"), py::arg("kappa"));

  m.def(
      "verify",
      [](const std::vector<std::vector<double>>& rows,
         const std::vector<std::size_t>& tuple, const py::dict& map) {
        return report_to_dict(km::cycl_n_verify(
            metric_from_rows(rows), tuple_of(tuple), map_from_dict(map)));
      },
      py::arg("matrix"), py::arg("tuple"), py::arg("map"));

  m.def(
      "render_svg",
      [](const py::dict& map, const std::string& projection, int size_px) {
        km::Projection proj;
        if (!km::projection_from_string(projection, &proj))
          throw std::invalid_argument("unknown projection " + projection);
        return km::render_svg(map_from_dict(map), proj, size_px);
      },
      py::arg("map"), py::arg("projection") = "auto", py::arg("size_px") = 480);

  m.def(
      "lemma_suite",
      [](const std::string& kind, double kappa, std::size_t trials,
         std::uint64_t seed) {
        km::LemmaKind k;
        if (!km::lemma_kind_from_string(kind, &k))
          throw std::invalid_argument("unknown lemma suite " + kind);
        km::LemmaSuiteReport r =
            km::lemma_property_suite(k, km::Kappa(kappa), trials, seed);
        py::dict d;
        d["suite"] = km::to_string(r.kind);
        d["kappa"] = r.kappa;
        d["trials"] = r.trials;
        d["completed"] = r.completed;
        d["skipped"] = r.skipped;
        d["failures"] = r.failures;
        d["worst_violation"] = r.worst_violation;
        return d;
      },
      py::arg("kind"), py::arg("kappa"), py::arg("trials") = 1000,
      py::arg("seed") = 0);

  m.attr("__version__") = "0.1.0";
}
