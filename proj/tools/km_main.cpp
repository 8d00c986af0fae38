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

// km: check comparison-geometry conditions of finite metric spaces and
// build convex comparison polygons in the model surface of curvature
// kappa.
//
// Exit codes: 0 success / all conditions hold, 1 a condition failed or the
// input is not majorizable, 2 input error, 3 numerical breakdown.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "km/conditions.hpp"
#include "km/io.hpp"
#include "km/majorize.hpp"
#include "km/oracle.hpp"
#include "km/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

km::CyclicTuple parse_tuple(const std::string& spec, std::size_t n) {
  km::CyclicTuple t;
  if (spec.empty()) {
    for (std::size_t i = 0; i < n; ++i) t.indices.push_back(i);
    return t;
  }
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string tok = spec.substr(pos, comma == std::string::npos
                                           ? std::string::npos
                                           : comma - pos);
    try {
      t.indices.push_back(std::stoul(tok));
    } catch (const std::exception&) {
      throw km::InputError("bad tuple entry '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (std::size_t i : t.indices)
    if (i >= n) throw km::InputError("tuple index out of range");
  return t;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    km::write_file(out_path, text);
}

struct CheckOptions {
  std::string input, out;
  double kappa = 0.0;
  std::size_t wir_n = 0;  // 0 = skip Wir
};

int run_check(const CheckOptions& opt) {
  km::ParsedMetric pm = km::parse_matrix_file(opt.input);
  km::Kappa kappa(opt.kappa);
  std::vector<km::ConditionReport> reports;
  reports.push_back(km::cycl4_check(pm.metric, kappa));
  reports.push_back(km::cat4_check(pm.metric, kappa));
  if (kappa.flat()) reports.push_back(km::boxtimes_check(pm.metric));
  if (opt.wir_n >= 4)
    reports.push_back(km::wir_check(pm.metric, opt.wir_n));
  bool pass = true;
  for (const auto& r : reports) pass = pass && !r.failed();

  km::JsonWriter w;
  w.begin_object();
  w.key("command").value("check");
  w.key("kappa").value(opt.kappa);
  w.key("n").value(pm.metric.size());
  w.key("results").begin_array();
  for (const auto& r : reports) km::write_condition_report(w, r);
  w.end_array();
  w.key("pass").value(pass);
  w.end_object();
  emit(w.take() + "\n", opt.out);
  return pass ? kExitOk : kExitViolation;
}

struct MajorizeOptions {
  std::string input, out, svg, tuple, projection = "auto";
  double kappa = 0.0;
  int size_px = 480;
};

int run_majorize(const MajorizeOptions& opt) {
  km::ParsedMetric pm = km::parse_matrix_file(opt.input);
  km::Kappa kappa(opt.kappa);
  km::CyclicTuple t = parse_tuple(opt.tuple, pm.metric.size());
  km::MajorizeResult res = km::majorize(pm.metric, t, kappa);
  if (!km::ok(res)) {
    const km::MajorizeError& e = km::error_of(res);
    km::JsonWriter w;
    km::write_majorize_error(w, e);
    emit(w.take() + "\n", opt.out);
    switch (e.kind) {
      case km::MajorizeError::Kind::PerimeterTooLarge: return kExitInput;
      case km::MajorizeError::Kind::NotQuadruple: return kExitViolation;
      default: return kExitNumerical;
    }
  }
  const km::ComparisonMap& cm = km::map_of(res);
  km::JsonWriter w;
  km::write_comparison_map(w, cm);
  emit(w.take() + "\n", opt.out);
  if (!opt.svg.empty()) {
    km::Projection proj;
    if (!km::projection_from_string(opt.projection, &proj))
      throw km::InputError("unknown projection '" + opt.projection + "'");
    km::write_file(opt.svg, km::render_svg(cm, proj, opt.size_px));
  }
  return kExitOk;
}

struct VerifyOptions {
  std::string input, map, tuple, out;
};

int run_verify(const VerifyOptions& opt) {
  km::ParsedMetric pm = km::parse_matrix_file(opt.input);
  std::string map_text = km::read_file(opt.map);
  // The map file is the majorize output schema.
  km::ComparisonMap cm;
  {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(map_text);
    } catch (const std::exception& e) {
      throw km::InputError(std::string("bad map JSON: ") + e.what());
    }
    if (!doc.contains("kappa") || !doc.contains("points"))
      throw km::InputError("map JSON needs kappa and points");
    cm.kappa = km::Kappa(doc["kappa"].get<double>());
    for (const auto& row : doc["points"]) {
      km::ModelPoint p;
      p.kappa = cm.kappa;
      if (row.size() < 2) throw km::InputError("point rows need 2+ coords");
      p.c[0] = row[0].get<double>();
      p.c[1] = row[1].get<double>();
      p.c[2] = row.size() > 2 ? row[2].get<double>() : 0.0;
      cm.points.push_back(p);
    }
  }
  km::CyclicTuple t = parse_tuple(opt.tuple, pm.metric.size());
  km::ConditionReport r = km::cycl_n_verify(pm.metric, t, cm);
  km::JsonWriter w;
  km::write_condition_report(w, r);
  emit(w.take() + "\n", opt.out);
  return r.failed() ? kExitViolation : kExitOk;
}

struct GenOptions {
  std::string out, points_out, model;
  std::size_t n = 6;
  double kappa = 0.0;
  std::uint64_t seed = 0;
};

int run_gen(const GenOptions& opt) {
  double kappa_value = opt.kappa;
  if (!opt.model.empty()) {
    double implied = opt.model == "plane"       ? 0.0
                     : opt.model == "sphere"      ? 1.0
                     : opt.model == "hyperboloid" ? -1.0
                                                  : std::nan("");
    if (std::isnan(implied))
      throw km::InputError("unknown model '" + opt.model + "'");
    if (opt.kappa == 0.0 && opt.model != "plane") kappa_value = implied;
    if ((kappa_value > 0) != (opt.model == "sphere") ||
        (kappa_value < 0) != (opt.model == "hyperboloid"))
      throw km::InputError("model does not match the kappa sign");
  }
  km::Kappa kappa(kappa_value);
  auto [metric, points] = km::sample_model_subset(opt.n, kappa, opt.seed);
  emit(km::matrix_to_csv(metric), opt.out);
  if (!opt.points_out.empty()) {
    km::JsonWriter w;
    w.begin_object();
    w.key("kappa").value(kappa.value);
    w.key("model").value(km::model_name(kappa));
    w.key("points").begin_array();
    for (const auto& p : points) {
      w.begin_array();
      w.value(p.c[0]);
      w.value(p.c[1]);
      if (!kappa.flat()) w.value(p.c[2]);
      w.end_array();
    }
    w.end_array();
    w.end_object();
    km::write_file(opt.points_out, w.take() + "\n");
  }
  return kExitOk;
}

struct SnowflakeOptions {
  std::string input, out;
  double alpha = 0.5;
};

int run_snowflake(const SnowflakeOptions& opt) {
  km::ParsedMetric pm = km::parse_matrix_file(opt.input);
  km::FiniteMetric flaked = km::snowflake(pm.metric, opt.alpha);
  emit(km::matrix_to_csv(flaked), opt.out);
  return kExitOk;
}

struct OracleOptions {
  std::string suite, out;
  double kappa = 0.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
};

int run_oracle(const OracleOptions& opt) {
  km::Kappa kappa(opt.kappa);
  km::LemmaKind kind;
  if (!km::lemma_kind_from_string(opt.suite, &kind))
    throw km::InputError(
        "unknown oracle suite '" + opt.suite +
        "' (expected alexandrov_larger, alexandrov_smaller, crossing, "
        "quadruple_p or angle_calculus)");
  km::LemmaSuiteReport report =
      km::lemma_property_suite(kind, kappa, opt.trials, opt.seed);
  km::JsonWriter w;
  km::write_lemma_report(w, report);
  emit(w.take() + "\n", opt.out);
  return report.clean() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "comparison-geometry conditions and convex comparison polygons for "
      "finite metric spaces"};
  app.require_subcommand(1);

  double tol = -1.0;
  app.add_option("--tol", tol, "global tolerance override (also env KM_TOL)");

  CheckOptions check;
  CLI::App* c = app.add_subcommand("check", "run the condition checkers");
  c->add_option("--input", check.input, "distance matrix (CSV or JSON)")
      ->required();
  c->add_option("--kappa", check.kappa, "curvature bound")->required();
  c->add_option("--wir", check.wir_n, "also check the Wir_n inequalities");
  c->add_option("--out", check.out, "write the JSON report here");

  MajorizeOptions maj;
  CLI::App* m = app.add_subcommand("majorize", "build a comparison polygon");
  m->add_option("--input", maj.input, "distance matrix (CSV or JSON)")
      ->required();
  m->add_option("--kappa", maj.kappa, "curvature bound")->required();
  m->add_option("--tuple", maj.tuple, "cyclic tuple, e.g. 0,1,2,3");
  m->add_option("--out", maj.out, "write the map JSON here");
  m->add_option("--svg", maj.svg, "also render the polygon to this SVG file");
  m->add_option("--projection", maj.projection,
                "auto | plane | poincare | orthographic");
  m->add_option("--size", maj.size_px, "SVG size in pixels");

  VerifyOptions ver;
  CLI::App* v = app.add_subcommand("verify", "verify a candidate map");
  v->add_option("--input", ver.input, "distance matrix")->required();
  v->add_option("--map", ver.map, "comparison map JSON")->required();
  v->add_option("--tuple", ver.tuple, "cyclic tuple");
  v->add_option("--out", ver.out, "write the JSON report here");

  GenOptions gen;
  CLI::App* g = app.add_subcommand("gen", "sample a model-surface metric");
  g->add_option("--n", gen.n, "number of points");
  g->add_option("--kappa", gen.kappa, "curvature bound");
  g->add_option("--model", gen.model, "plane | sphere | hyperboloid");
  g->add_option("--seed", gen.seed, "RNG seed");
  g->add_option("--out", gen.out, "write the CSV matrix here");
  g->add_option("--points", gen.points_out, "write ground-truth points here");

  SnowflakeOptions snow;
  CLI::App* s = app.add_subcommand("snowflake", "entrywise metric power");
  s->add_option("--input", snow.input, "distance matrix")->required();
  s->add_option("--alpha", snow.alpha, "exponent in (0, 1]")->required();
  s->add_option("--out", snow.out, "write the CSV matrix here");

  OracleOptions orc;
  CLI::App* o = app.add_subcommand("oracle", "run a lemma property suite");
  o->add_option("--suite", orc.suite, "suite name")->required();
  o->add_option("--kappa", orc.kappa, "curvature bound");
  o->add_option("--trials", orc.trials, "number of trials");
  o->add_option("--seed", orc.seed, "RNG seed");
  o->add_option("--out", orc.out, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tol > 0.0) km::set_global_tolerance(tol);
    if (c->parsed()) return run_check(check);
    if (m->parsed()) return run_majorize(maj);
    if (v->parsed()) return run_verify(ver);
    if (g->parsed()) return run_gen(gen);
    if (s->parsed()) return run_snowflake(snow);
    if (o->parsed()) return run_oracle(orc);
  } catch (const km::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}
