// Copyright 2026 The mpzeno Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mpzeno/harness.hpp"
#include "test_support.hpp"

using namespace mpzeno;

namespace {

Scenario parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in, ".");
}

// Blank the seconds column (the only run-dependent field).
std::string strip_seconds(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#' && line.find("scheme,") != 0) {
      auto cut = line.rfind(',');
      line = line.substr(0, cut);
    }
    out << line << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("minimal scenario gets the documented defaults") {
  Scenario sc = parse_string("system = qubit_projective\n");
  CHECK(sc.n_grid == std::vector<long>{8, 16, 32, 64, 128, 256});
  CHECK(sc.k_orders == std::vector<int>{0, 1});
  CHECK(sc.norm_kind == NormKind::spectral);
  CHECK(sc.output_path == "scenario.csv");
  CHECK_FALSE(sc.time.has_value());
}

TEST_CASE("section headers are grouping only and comments are skipped") {
  Scenario sc = parse_string(
      "# a comment\n"
      "name = demo\n"
      "system = qubit_projective\n"
      "[system]\n"
      "theta = 0.25\n");
  CHECK(sc.params.at("theta") == "0.25");
}

TEST_CASE("malformed lines raise parse errors with the line number") {
  try {
    parse_string("system = qubit_projective\nthis line has no equals sign\n");
    FAIL("expected a parse error");
  } catch (const ValidationError& err) {
    CHECK(std::string(err.name()) == "parse");
    CHECK(std::string(err.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS(parse_string("system = nonsense\n"), ValidationError);
  CHECK_THROWS_AS(parse_string("system = qubit_projective\nn_grid = 8, 16, 32\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_string("system = qubit_projective\nn_grid = 8, 8, 16, 32\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_string("system = qubit_projective\nk_orders = 0, 9\n"), ValidationError);
  CHECK_THROWS_AS(parse_string("system = qubit_projective\nnorm = fancy\n"), ValidationError);
}

TEST_CASE("unknown system parameters are rejected by the builder") {
  Scenario sc = parse_string("system = qubit_projective\nbogus_knob = 3\n");
  CHECK_THROWS_AS(build_system(sc), ValidationError);
}

TEST_CASE("cat truncation invariant is enforced") {
  Scenario sc = parse_string("system = cat_code\nalpha = 2.0\nfock_dim = 12\n");
  CHECK_THROWS_AS(build_system(sc), ValidationError);
}

TEST_CASE("matrix sidecar files round-trip") {
  std::mt19937_64 rng(80);
  Matrix m = test::random_complex(3, 2, rng);
  std::string path = "sidecar_roundtrip.tmp";
  write_matrix_file(path, m);
  Matrix back = read_matrix_file(path);
  std::remove(path.c_str());
  CHECK((m - back).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("custom systems load sidecar matrices and validate them") {
  // Valid: pinch kick + sigma_x Hamiltonian.
  Matrix k0 = test::ket0_projector();
  Matrix k1 = Matrix::Identity(2, 2) - k0;
  write_matrix_file("custom_m.tmp", kraus_channel({k0, k1}).matrix);
  write_matrix_file("custom_h.tmp", test::pauli_x());

  Scenario sc = parse_string(
      "system = custom\n"
      "m_file = custom_m.tmp\n"
      "h_file = custom_h.tmp\n");
  SystemModel model = build_system(sc);
  CHECK(model.dim == 2);

  // Invalid: a non-channel kick must be rejected.
  write_matrix_file("custom_bad.tmp", (0.5 * Matrix::Identity(4, 4)).eval());
  Scenario bad = parse_string(
      "system = custom\n"
      "m_file = custom_bad.tmp\n"
      "h_file = custom_h.tmp\n");
  CHECK_THROWS_AS(build_system(bad), ValidationError);

  std::remove("custom_m.tmp");
  std::remove("custom_h.tmp");
  std::remove("custom_bad.tmp");
}

TEST_CASE("run produces one row per (K, n) cell and passing slopes") {
  Scenario sc = parse_string(
      "name = smoke\n"
      "system = qubit_projective\n"
      "t = 1.0\n"
      "n_grid = 8, 16, 32, 64\n"
      "k_orders = 0, 1\n");
  RunReport report = run_scenario(sc);
  CHECK(report.rows.size() == 8);  // |k_orders| x |n_grid|, no silent omissions
  REQUIRE(report.slopes.size() == 2);
  CHECK(report.slopes[0].pass);
  CHECK(report.slopes[1].pass);
  CHECK(report.accepted);
  CHECK(report.consistent_limit == "order");
  CHECK(report.period == 1);

  nlohmann::json j = report_json(report);
  CHECK(j["rows"].size() == 8);
  CHECK(j["accepted"] == true);
}

TEST_CASE("CSV is deterministic apart from the seconds column") {
  Scenario sc = parse_string(
      "name = determinism\n"
      "system = qubit_projective\n"
      "n_grid = 8, 16, 32, 64\n"
      "k_orders = 0, 1\n");
  std::string first = report_csv(run_scenario(sc));
  std::string second = report_csv(run_scenario(sc));
  CHECK(strip_seconds(first) == strip_seconds(second));
  CHECK(first.find("scheme,K,p,n,error,norm_kind,seconds\n") == 0);
}

TEST_CASE("one11 norm selection is honored and recorded") {
  Scenario sc = parse_string(
      "name = one11\n"
      "system = qubit_projective\n"
      "n_grid = 8, 16, 32, 64\n"
      "k_orders = 0\n"
      "norm = one11\n");
  RunReport report = run_scenario(sc);
  CHECK(report.norm_kind == NormKind::one_to_one_lower);
  std::string csv = report_csv(report);
  CHECK(csv.find(",one11,") != std::string::npos);
  CHECK(report.slopes[0].pass);
}

TEST_CASE("coeffs table prints exact and decimal rows") {
  CHECK(coeffs_table(1) == "exact: -1, 2\ndecimal: -1, 2\n");
  CHECK(coeffs_table(0) == "exact: 1\ndecimal: 1\n");
  CHECK(coeffs_table(2).find("1/2, -4, 9/2") != std::string::npos);
}

TEST_CASE("lemma suite runs green on seeded trials") {
  CHECK_THROWS_AS(verify_lemmas(42, 0), ValidationError);
  LemmaSuite suite = verify_lemmas(42, 3);
  REQUIRE(suite.cases.size() == 5);  // identity + qubit + 3 trials
  CHECK(suite.cases[0].label == "identity");
  CHECK(suite.cases[0].chernoff == 0.0);
  CHECK(suite.cases[0].dunford_segal == 0.0);
  CHECK(suite.all_pass);
}

TEST_CASE("lemma residuals are attached to the report when requested") {
  Scenario sc = parse_string(
      "name = lemma-run\n"
      "system = qubit_projective\n"
      "n_grid = 8, 16, 32, 64\n"
      "k_orders = 0\n"
      "lemmas = true\n");
  RunReport report = run_scenario(sc);
  REQUIRE(report.lemmas.has_value());
  CHECK(report.lemmas->chernoff < 1e-6);
  CHECK(report.lemmas->dunford_segal < 1e-6);
  CHECK(report_json(report).contains("lemmas"));
}

TEST_CASE("custom systems accept a generator sidecar and validate it") {
  Matrix k0 = test::ket0_projector();
  Matrix k1 = Matrix::Identity(2, 2) - k0;
  write_matrix_file("custom_m2.tmp", kraus_channel({k0, k1}).matrix);

  Matrix sigma_minus = Matrix::Zero(2, 2);
  sigma_minus(0, 1) = 1.0;
  Superoperator lind = lindblad_generator({test::pauli_z(), {{sigma_minus, 0.5}}});
  write_matrix_file("custom_l.tmp", lind.matrix);

  Scenario sc = parse_string(
      "system = custom\n"
      "m_file = custom_m2.tmp\n"
      "l_file = custom_l.tmp\n");
  SystemModel model = build_system(sc);
  CHECK((model.generator.matrix - lind.matrix).norm() < 1e-15);

  // A generator that does not annihilate the trace functional is rejected.
  write_matrix_file("custom_l_bad.tmp", Matrix::Identity(4, 4));
  Scenario bad = parse_string(
      "system = custom\n"
      "m_file = custom_m2.tmp\n"
      "l_file = custom_l_bad.tmp\n");
  CHECK_THROWS_AS(build_system(bad), ValidationError);

  std::remove("custom_m2.tmp");
  std::remove("custom_l.tmp");
  std::remove("custom_l_bad.tmp");
}

TEST_CASE("three-level bath gives the cube roots of unity and period 3") {
  Scenario sc = parse_string(
      "name = dec3\n"
      "system = decoupling\n"
      "J = 3\n"
      "n_grid = 6, 12, 24, 48\n"
      "k_orders = 0\n");
  RunReport report = run_scenario(sc);
  CHECK(report.lambdas.size() == 3);
  CHECK(report.period == 3);
}

TEST_CASE("explicit t overrides the theta-derived time on the cat system") {
  Scenario sc = parse_string(
      "name = cat-small\n"
      "system = cat_code\n"
      "alpha = 1.0\n"
      "fock_dim = 16\n"
      "t = 0.3\n"
      "n_grid = 8, 16, 32, 64\n"
      "k_orders = 0\n");
  RunReport report = run_scenario(sc);
  CHECK(report.time == 0.3);
  REQUIRE(report.cat.has_value());
  // omega = 2 alpha / sqrt(1 - e^{-4 alpha^2}) for the projected drive.
  double expected = 2.0 / std::sqrt(1.0 - std::exp(-4.0));
  CHECK(report.cat->omega == doctest::Approx(expected).epsilon(1e-6));
  CHECK(report.cat->rotation_residual < 1e-8);
}

TEST_CASE("run_scenario surfaces named spectral errors") {
  // A kick with an eigenvalue inside the gap annulus: dephasing at 0.95.
  Matrix m = Matrix::Identity(4, 4);
  m(1, 1) = 0.95;
  m(2, 2) = 0.95;
  write_matrix_file("gap_m.tmp", m);
  write_matrix_file("gap_h.tmp", test::pauli_x());
  Scenario sc = parse_string(
      "system = custom\n"
      "m_file = gap_m.tmp\n"
      "h_file = gap_h.tmp\n"
      "gap_tol = 0.2\n");
  try {
    run_scenario(sc);
    FAIL("expected a spectral error");
  } catch (const SpectralError& err) {
    CHECK(std::string(err.name()) == "gap_violation");
    CHECK(err.exit_code() == ExitCode::spectral);
  }
  std::remove("gap_m.tmp");
  std::remove("gap_h.tmp");
}
