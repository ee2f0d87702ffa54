// elastica command line front end.
//
// Subcommands wrap the library checks one-to-one; every run prints a single
// report (JSON by default, --format text for a human summary) built only from
// the inputs, the effective configuration, and the library version, so
// repeated runs with the same arguments are byte-identical.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "elastica/config.hpp"
#include "elastica/elastic.hpp"
#include "elastica/extremal.hpp"
#include "elastica/fixtures.hpp"
#include "elastica/homopoly.hpp"
#include "elastica/nonneg.hpp"
#include "elastica/perfect_square.hpp"
#include "elastica/translation.hpp"
#include "elastica/version.hpp"

namespace {

using nlohmann::json;

struct CliOptions {
  elastica::RunConfig run;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* sub, CliOptions& o) {
  sub->add_option("--seed", o.run.seed, "RNG seed (default 1)");
  sub->add_option("--tol", o.run.tol,
                  "tolerance override (0 keeps the per-check default)");
  sub->add_option("--samples", o.run.samples, "sample budget override");
  sub->add_option("--starts", o.run.starts, "multi-start budget override");
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_option("--format", o.format, "output format (default json)")
      ->check(CLI::IsMember({"json", "text"}));
}

// Shortest round-trip decimal form; matches the JSON rendering so text and
// JSON reports agree digit for digit.
std::string fmt(double x) { return json(x).dump(); }

json config_json(const elastica::RunConfig& run) {
  return json{{"seed", run.seed},
              {"tol", run.tol},
              {"samples", run.samples},
              {"starts", run.starts}};
}

void emit(const CliOptions& o, const std::string& command,
          const std::vector<std::string>& inputs, const json& report,
          const std::string& text) {
  std::string payload;
  if (o.format == "json") {
    json envelope;
    envelope["tool"] = "elastica";
    envelope["version"] = ELASTICA_VERSION;
    envelope["command"] = command;
    envelope["config"] = config_json(o.run);
    envelope["input"] = inputs;
    envelope["report"] = report;
    payload = envelope.dump(2) + "\n";
  } else {
    payload = text;
  }
  if (o.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + o.out);
    f << payload;
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

std::string load_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Accepts either a stiffness tensor ("symmetry" key) or a raw quadratic form
// ("gram" key) and returns the form.
elastica::QuadraticForm parse_form(const json& j) {
  if (j.is_object() && j.contains("gram")) {
    return elastica::QuadraticForm::from_json(j);
  }
  if (j.is_object() && j.contains("symmetry")) {
    return elastica::QuadraticForm::from_stiffness(
        elastica::StiffnessTensor::from_json(j));
  }
  throw std::invalid_argument(
      "expected a stiffness tensor (\"symmetry\" key) or a quadratic form "
      "(\"gram\" key)");
}

std::string bool_name(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

int run_analyze(const CliOptions& o, const std::string& input) {
  const auto c = elastica::StiffnessTensor::from_json(load_json(input));
  elastica::Theorem51Config cfg;
  cfg.convexity = o.run.rank_one();
  cfg.form = o.run.form_extremality();
  cfg.poly = o.run.poly_extremality();
  if (o.run.tol > 0) cfg.tol = o.run.tol;
  const auto r = elastica::theorem51_audit(c, cfg);

  std::ostringstream t;
  t << "det: " << elastica::to_text(r.det) << "\n";
  t << "rank_one_convex: " << bool_name(r.rank_one_convex) << " (min "
    << fmt(r.convexity.min_value) << ")\n";
  t << "normal_product_nonzero: " << bool_name(r.normal_product_nonzero)
    << "\n";
  t << "det_identically_zero: " << bool_name(r.det_identically_zero) << "\n";
  if (r.poly_report) {
    t << "det_extremal: " << bool_name(r.det_extremal) << " ("
      << elastica::verdict_name(r.poly_report->verdict) << ", max_deviation "
      << fmt(r.poly_report->max_deviation) << ")\n";
  }
  t << "det_perfect_square: " << bool_name(r.det_perfect_square) << "\n";
  if (r.square_root) {
    t << "square_root: " << elastica::to_text(*r.square_root) << "\n";
  }
  if (r.form_report) {
    t << "form_extremal: " << bool_name(r.form_extremal) << " ("
      << elastica::verdict_name(r.form_report->verdict) << ", max_t "
      << fmt(r.form_report->max_t) << ")\n";
  }
  t << "hypotheses_satisfied: " << bool_name(r.hypotheses_satisfied) << "\n";
  t << "consistent: " << bool_name(r.consistent) << "\n";

  emit(o, "analyze", {input}, elastica::to_json(r), t.str());
  return 0;
}

// ---------------------------------------------------------------------------
// det-poly
// ---------------------------------------------------------------------------

int run_det_poly(const CliOptions& o, const std::string& input) {
  const json j = load_json(input);
  elastica::HomoPoly det;
  if (j.is_object() && j.contains("gram")) {
    det = elastica::acoustic_det(elastica::QuadraticForm::from_json(j));
  } else {
    det = elastica::acoustic_det(elastica::StiffnessTensor::from_json(j));
  }
  json report;
  report["det"] = elastica::poly_to_json(det);
  report["det_text"] = elastica::to_text(det);
  report["identically_zero"] = det.is_zero();
  emit(o, "det-poly", {input}, report, elastica::to_text(det) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// check-poly
// ---------------------------------------------------------------------------

int run_check_poly(const CliOptions& o, const std::string& input) {
  const auto p = elastica::poly_from_text(load_text(input));
  const auto r = elastica::poly_extremality(p, o.run.poly_extremality());

  std::ostringstream t;
  t << "verdict: " << elastica::verdict_name(r.verdict) << "\n";
  t << "max_deviation: " << fmt(r.max_deviation) << "\n";
  t << "constraints: " << r.samples << "\n";
  if (r.witness) t << "witness: " << elastica::to_text(*r.witness) << "\n";
  emit(o, "check-poly", {input}, elastica::to_json(r), t.str());
  return 0;
}

// ---------------------------------------------------------------------------
// perfect-square
// ---------------------------------------------------------------------------

int run_perfect_square(const CliOptions& o, const std::string& input) {
  const auto p = elastica::poly_from_text(load_text(input));
  const auto r = elastica::perfect_square_check(p, o.run.perfect_square());

  std::ostringstream t;
  t << "verdict: " << (r.square ? "square" : "not_square") << "\n";
  if (r.root) {
    t << "root: " << elastica::to_text(*r.root) << "\n";
    t << "root_scale: " << elastica::rat_to_string(r.root_scale) << "\n";
  }
  t << "residual: " << fmt(r.residual) << "\n";
  t << "exact: " << bool_name(r.exact) << "\n";
  emit(o, "perfect-square", {input}, elastica::to_json(r), t.str());
  return 0;
}

// ---------------------------------------------------------------------------
// check-form
// ---------------------------------------------------------------------------

std::string rat_matrix_text(const elastica::RatMatrix& m) {
  std::ostringstream s;
  s << "[";
  for (size_t i = 0; i < m.size(); ++i) {
    s << (i ? ", [" : "[");
    for (size_t j = 0; j < m[i].size(); ++j) {
      s << (j ? ", " : "") << elastica::rat_to_string(m[i][j]);
    }
    s << "]";
  }
  s << "]";
  return s.str();
}

int run_check_form(const CliOptions& o, const std::string& input) {
  const auto f = parse_form(load_json(input));
  const auto r = elastica::form_extremality(f, o.run.form_extremality());

  std::ostringstream t;
  t << "verdict: " << elastica::verdict_name(r.verdict) << "\n";
  t << "max_t: " << fmt(r.max_t) << "\n";
  if (r.witness_b) {
    t << "witness_B: " << rat_matrix_text(r.witness_b->B) << "\n";
    t << "witness_t: " << fmt(r.witness_t) << "\n";
    t << "witness_verified: " << bool_name(r.witness_verified) << "\n";
  }
  emit(o, "check-form", {input}, elastica::to_json(r), t.str());
  return 0;
}

// ---------------------------------------------------------------------------
// translation
// ---------------------------------------------------------------------------

elastica::TwoPhaseSetup parse_setup(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("setup: expected a JSON object");
  }
  elastica::TwoPhaseSetup s;
  s.phase1 = elastica::StiffnessTensor::from_json(j.at("phase1"));
  s.phase2 = elastica::StiffnessTensor::from_json(j.at("phase2"));
  s.translation = parse_form(j.at("translation"));
  if (j.contains("t")) {
    const auto& t = j.at("t");
    if (t.is_number()) {
      s.t = t.get<double>();
    } else if (t.is_string()) {
      s.t = elastica::rat_to_double(
          elastica::rat_from_string(t.get<std::string>()));
    } else {
      throw std::invalid_argument("setup: t must be a number or a rational string");
    }
  }
  return s;
}

int run_translation(const CliOptions& o, const std::string& input,
                    const std::string& field_path) {
  const auto setup = parse_setup(load_json(input));
  const double tol = o.run.tol > 0 ? o.run.tol : 1e-10;
  const auto gap = elastica::translation_gap(setup, tol, tol);

  json report;
  report["gap"] = elastica::to_json(gap);
  std::ostringstream t;
  t << "phase1: " << (gap.phase1.psd ? "psd" : "not_psd") << " (min_eigenvalue "
    << fmt(gap.phase1.min_eigenvalue) << ")\n";
  t << "phase2: " << (gap.phase2.psd ? "psd" : "not_psd") << " (min_eigenvalue "
    << fmt(gap.phase2.min_eigenvalue) << ")\n";
  t << "admissible: " << bool_name(gap.admissible) << "\n";
  t << "degenerate_directions: " << gap.degenerate_directions.size() << "\n";

  std::vector<std::string> inputs = {input};
  if (!field_path.empty()) {
    inputs.push_back(field_path);
    const auto u = elastica::read_field(field_path, field_path + ".json");
    const double ftol = o.run.tol > 0 ? o.run.tol : 1e-8;
    const auto fr =
        elastica::fourier_quasiconvexity_check(setup.translation, u, ftol);
    report["fourier"] = elastica::to_json(fr);
    t << "fourier_total: " << fmt(fr.total) << "\n";
    t << "fourier_nonnegative: " << bool_name(fr.nonnegative) << "\n";
    t << "fourier_special: " << bool_name(fr.special) << "\n";
    t << "plancherel_rel_err: " << fmt(fr.plancherel_rel_err) << "\n";
  }
  emit(o, "translation", inputs, report, t.str());
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct BatteryItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

elastica::StiffnessTensor random_orthotropic(elastica::Rng& rng) {
  std::array<elastica::Rational, 9> c;
  for (auto& v : c) {
    v = elastica::Rational(rng.uniform_int(-4, 4), rng.uniform_int(1, 4));
    v.canonicalize();
  }
  return elastica::StiffnessTensor::orthotropic(c);
}

elastica::RatMatrix random_rat_matrix(elastica::Rng& rng, int lo, int hi) {
  elastica::RatMatrix b(3, std::vector<elastica::Rational>(3));
  for (auto& row : b) {
    for (auto& v : row) {
      v = elastica::Rational(rng.uniform_int(lo, hi), rng.uniform_int(1, 3));
      v.canonicalize();
    }
  }
  return b;
}

int run_verify(const CliOptions& o) {
  namespace fx = elastica::fixtures;
  std::vector<BatteryItem> items;
  const auto add = [&items](std::string name, bool pass, std::string detail) {
    items.push_back({std::move(name), pass, std::move(detail)});
  };

  // Exact determinants of the worked examples.
  {
    const auto det = elastica::acoustic_det(fx::normal_squares_stiffness());
    add("example1_det", det == fx::triple_square(),
        "det(x11^2+x22^2+x33^2) == y1^2 y2^2 y3^2 exactly");
  }
  {
    const auto det = elastica::acoustic_det(
        fx::diagonal_stiffness({1, 1, 0, 0, 0, 0}));
    add("example2_det", det.is_zero(), "det(x11^2+x22^2) == 0 exactly");
  }
  {
    elastica::Rng rng(o.run.seed);
    bool all = true;
    for (int trial = 0; trial < 8 && all; ++trial) {
      const auto b = random_rat_matrix(rng, -3, 3);
      all = elastica::acoustic_det(elastica::QuadraticForm::rank_one(b)).is_zero();
    }
    add("example3_det", all, "det((B:xi)^2) == 0 for 8 random B");
  }
  {
    const auto det = elastica::acoustic_det(fx::cyclic_form());
    add("example4_det", det == fx::cyclic_sextic_swapped(),
        "det(Q) matches the cyclic sextic exactly");
  }

  // Extremality of the cyclic pair.
  {
    const auto r =
        elastica::poly_extremality(fx::cyclic_sextic(), o.run.poly_extremality());
    const bool pass =
        r.verdict == elastica::PolyExtremalityReport::Verdict::kExtremal;
    add("p_extremality", pass,
        "verdict " + elastica::verdict_name(r.verdict) + ", max_deviation " +
            fmt(r.max_deviation));
  }
  {
    auto cfg = o.run.form_extremality();
    if (o.run.starts == 0) cfg.starts = 64;  // battery budget
    const auto r = elastica::form_extremality(fx::cyclic_form(), cfg);
    const bool pass =
        r.verdict == elastica::FormExtremalityReport::Verdict::kExtremal;
    add("q_form_extremality", pass,
        "verdict " + elastica::verdict_name(r.verdict) + ", max_t " +
            fmt(r.max_t));
  }

  // Exact subtracted-determinant identity on random orthotropic tensors.
  {
    elastica::Rng rng(o.run.seed + 1);
    int ok = 0;
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
      const auto c = random_orthotropic(rng);
      elastica::RankOneForm b{random_rat_matrix(rng, -3, 3)};
      elastica::Rational t(rng.uniform_int(-2, 4), rng.uniform_int(1, 3));
      t.canonicalize();
      if (elastica::subtracted_det_identity_check(c, b, t)) ++ok;
    }
    add("det_identity", ok == trials,
        std::to_string(ok) + "/" + std::to_string(trials) + " exact");
  }

  // Cube-root determinant superadditivity on random psd pairs.
  {
    elastica::Rng rng(o.run.seed + 2);
    const int trials = 2000;
    int ok = 0;
    double min_slack = 0.0;
    bool first = true;
    for (int trial = 0; trial < trials; ++trial) {
      elastica::Mat3 a{}, b{};
      for (int i = 0; i < 3; ++i) {
        const auto u = rng.gauss_vec(3), v = rng.gauss_vec(3);
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) {
            a[j][k] += u[j] * u[k] / 3.0;
            b[j][k] += v[j] * v[k] / 3.0;
          }
        }
      }
      const auto r = elastica::brunn_minkowski_check(a, b);
      if (r.holds) ++ok;
      const double slack = r.lhs - r.rhs;
      if (first || slack < min_slack) min_slack = slack;
      first = false;
    }
    add("brunn_minkowski", ok == trials,
        std::to_string(ok) + "/" + std::to_string(trials) + ", min slack " +
            fmt(min_slack));
  }

  // Closed-form determinant families.
  {
    const auto fixtures = elastica::special_form_fixtures();
    int ok = 0;
    std::string failed;
    for (const auto& f : fixtures) {
      if (elastica::acoustic_det(f.form) == f.expected_det) {
        ++ok;
      } else if (failed.empty()) {
        failed = f.name;
      }
    }
    std::string detail = std::to_string(ok) + "/" +
                         std::to_string(fixtures.size()) + " exact";
    if (!failed.empty()) detail += ", first failure " + failed;
    add("special_dets", ok == static_cast<int>(fixtures.size()), detail);
  }

  bool all_pass = true;
  json jitems = json::array();
  std::ostringstream t;
  for (const auto& item : items) {
    all_pass = all_pass && item.pass;
    jitems.push_back(
        {{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
    t << (item.pass ? "PASS" : "FAIL") << " " << item.name << ": "
      << item.detail << "\n";
  }
  t << (all_pass ? "ok" : "FAILED") << " (" <<
      [&items] {
        int n = 0;
        for (const auto& item : items) n += item.pass ? 1 : 0;
        return n;
      }()
    << "/" << items.size() << " checks passed)\n";

  json report;
  report["all_pass"] = all_pass;
  report["items"] = jitems;
  emit(o, "verify", {}, report, t.str());
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks for extremal quadratic forms on 3x3 matrices and the "
               "acoustic determinants of orthotropic elasticity tensors"};
  app.set_version_flag("--version", ELASTICA_VERSION);
  app.require_subcommand(1);

  CliOptions o;
  std::string input;
  std::string field_path;
  int rc = 0;

  auto* analyze = app.add_subcommand(
      "analyze", "Full audit of an orthotropic stiffness tensor");
  analyze->add_option("tensor", input, "stiffness tensor JSON")->required();
  add_common(analyze, o);
  analyze->callback([&] { rc = run_analyze(o, input); });

  auto* det_poly = app.add_subcommand(
      "det-poly", "Exact acoustic determinant of a tensor or quadratic form");
  det_poly->add_option("input", input, "stiffness tensor or form JSON")
      ->required();
  add_common(det_poly, o);
  det_poly->callback([&] { rc = run_det_poly(o, input); });

  auto* check_poly = app.add_subcommand(
      "check-poly", "Extremality of a nonnegative homogeneous polynomial");
  check_poly->add_option("poly", input, "polynomial text file")->required();
  add_common(check_poly, o);
  check_poly->callback([&] { rc = run_check_poly(o, input); });

  auto* square = app.add_subcommand(
      "perfect-square", "Exact perfect-square decision for a polynomial");
  square->add_option("poly", input, "polynomial text file")->required();
  add_common(square, o);
  square->callback([&] { rc = run_perfect_square(o, input); });

  auto* check_form = app.add_subcommand(
      "check-form", "Extremality of a rank-one convex quadratic form");
  check_form->add_option("input", input, "stiffness tensor or form JSON")
      ->required();
  add_common(check_form, o);
  check_form->callback([&] { rc = run_check_form(o, input); });

  auto* translation = app.add_subcommand(
      "translation", "Translation-method gap for a two-phase setup");
  translation->add_option("setup", input, "two-phase setup JSON")->required();
  translation->add_option("field", field_path,
                          "optional periodic field (raw doubles; header in "
                          "<field>.json) for the Fourier check");
  add_common(translation, o);
  translation->callback([&] { rc = run_translation(o, input, field_path); });

  auto* verify = app.add_subcommand(
      "verify", "Battery of exact and numerical self-checks");
  add_common(verify, o);
  verify->callback([&] { rc = run_verify(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
