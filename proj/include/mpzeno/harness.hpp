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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpzeno/decoupling.hpp"
#include "mpzeno/fock.hpp"
#include "mpzeno/lindblad.hpp"
#include "mpzeno/multiproduct.hpp"
#include "mpzeno/scenario.hpp"

namespace mpzeno {

// Concrete kick/generator pair built from a scenario, with the side data the
// per-system report checks need.
struct SystemModel {
  Superoperator kick;
  Superoperator generator;
  Index dim = 0;

  // cat_code
  bool is_cat = false;
  double alpha = 0.0;
  double theta = 0.0;
  Matrix cat_p, cat_x;
  Vector cat_even, cat_odd;

  // decoupling
  bool is_decoupling = false;
  Index dim_system = 0, dim_bath = 0;
  Matrix hdec;
  Matrix rho_star;
};

SystemModel build_system(const Scenario& sc);

// Rotation frequency of the projected cat dynamics, fitted from a short-time
// probe of e^{s P L P} on |CAT+><CAT+|.
double fit_cat_frequency(const SystemModel& model, const SpectralSplit& split);

struct SweepRow {
  std::string scheme;  // "zeno" for K = 0, "mpf" otherwise
  int k = 0;
  long period = 1;
  long n = 0;
  double error = 0.0;         // order-convention limit
  double error_lambda = 0.0;  // lambda-weighted limit variant
  double seconds = 0.0;
};

struct SlopeSummary {
  int k = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool pass = false;
  std::vector<long> excluded_n;  // rows kept in the CSV but left out of the fit
};

struct CatReport {
  double omega = 0.0;
  double omega_over_alpha = 0.0;
  double time = 0.0;
  double rotation_residual = 0.0;
  std::string rotation_sign;  // which of cos(wt)P -+ i sin(wt)X conjugations fits
};

struct DecouplingReport {
  double hdec_residual = 0.0;
  double error_band = 0.0;
  bool pass = false;
};

struct LemmaReport {
  double chernoff = 0.0;
  double dunford_segal = 0.0;
};

struct RunReport {
  std::string name, system;
  NormKind norm_kind = NormKind::spectral;
  double time = 1.0;

  std::vector<Complex> lambdas;
  double delta = 0.0, c_est = 0.0, delta_emp = 0.0;
  long period = 1;

  std::vector<SweepRow> rows;
  std::vector<SlopeSummary> slopes;
  std::string consistent_limit;  // "order" or "lambda"

  std::optional<CatReport> cat;
  std::optional<DecouplingReport> decoupling;
  std::optional<LemmaReport> lemmas;

  std::vector<std::pair<std::string, double>> timings;
  bool accepted = false;
};

RunReport run_scenario(const Scenario& sc);

// CSV with header scheme,K,p,n,error,norm_kind,seconds and a deterministic
// summary block; only the seconds column varies between identical runs.
std::string report_csv(const RunReport& report);
nlohmann::json report_json(const RunReport& report);

// Body of the `coeffs` subcommand: exact-rational and decimal coefficients.
std::string coeffs_table(int k_order);

struct LemmaCase {
  std::string label;
  double chernoff = 0.0;
  double dunford_segal = 0.0;
};

struct LemmaSuite {
  std::vector<LemmaCase> cases;
  double max_residual = 0.0;
  bool all_pass = false;  // every residual < 1e-6
};

// Residual suite over the identity, the frozen-qubit example and seeded
// random 3x3 contractions, at the default quadrature orders.
LemmaSuite verify_lemmas(unsigned seed, int trials);
std::string lemma_suite_table(const LemmaSuite& suite);

}  // namespace mpzeno
