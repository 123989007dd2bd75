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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mpzeno/harness.hpp"

namespace {

int run_command(const std::string& path, const std::string& norm, const std::string& out,
                long seed) {
  mpzeno::Scenario scenario = mpzeno::load_scenario(path);
  if (norm == "spectral") scenario.norm_kind = mpzeno::NormKind::spectral;
  if (norm == "one11") scenario.norm_kind = mpzeno::NormKind::one_to_one_lower;
  if (!out.empty()) scenario.output_path = out;
  if (seed >= 0) scenario.seed = static_cast<unsigned>(seed);

  mpzeno::RunReport report = mpzeno::run_scenario(scenario);

  std::ofstream csv(scenario.output_path);
  if (!csv)
    throw mpzeno::ValidationError("io", "cannot write '" + scenario.output_path + "'");
  csv << mpzeno::report_csv(report);

  std::cout << mpzeno::report_json(report).dump(2) << "\n";
  return report.accepted ? 0 : static_cast<int>(mpzeno::ExitCode::acceptance);
}

int spectrum_command(const std::string& path) {
  mpzeno::Scenario scenario = mpzeno::load_scenario(path);
  mpzeno::SystemModel model = mpzeno::build_system(scenario);
  mpzeno::SpectralSplit split = mpzeno::peripheral_split(model.kick, scenario.gap_tol);

  std::vector<mpzeno::Complex> phases;
  for (const auto& comp : split.peripheral) phases.push_back(comp.lambda / std::abs(comp.lambda));
  long period = mpzeno::period_of_phases(phases, scenario.phase_tol, scenario.q_max);
  mpzeno::PowerConvergenceFit power =
      mpzeno::power_convergence_fit(model.kick.matrix, split, scenario.power_n_max);

  std::cout << "peripheral eigenvalues (" << split.peripheral.size() << "):\n";
  for (const auto& comp : split.peripheral)
    std::cout << "  lambda = " << comp.lambda.real() << (comp.lambda.imag() < 0 ? " - " : " + ")
              << std::abs(comp.lambda.imag()) << "i\n";
  std::cout << "delta     = " << split.delta << "\n";
  std::cout << "c_est     = " << power.c_est << "\n";
  std::cout << "delta_emp = " << power.delta_emp << "\n";
  std::cout << "period p  = " << period << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpzeno: quantum Zeno sequences, their effective limits, and multi-product "
               "acceleration on finite-dimensional superoperators"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run a scenario sweep and write a CSV report");
  std::string scenario_path;
  std::string norm;
  std::string out;
  long seed = -1;
  run_cmd->add_option("file", scenario_path, "scenario file")->required();
  run_cmd->add_option("--norm", norm, "error norm")->check(CLI::IsMember({"spectral", "one11"}));
  run_cmd->add_option("--out", out, "override the output path");
  run_cmd->add_option("--seed", seed, "seed for the sampled 1->1 norm estimate");

  auto* coeffs_cmd = app.add_subcommand("coeffs", "print multi-product coefficients");
  int order = 0;
  coeffs_cmd->add_option("--order", order, "extrapolation order K")->required();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "print the peripheral split of a scenario");
  std::string spectrum_path;
  spectrum_cmd->add_option("file", spectrum_path, "scenario file")->required();

  auto* lemmas_cmd = app.add_subcommand("verify-lemmas", "quadrature residuals of the two lemmas");
  long lemma_seed = 42;
  int trials = 10;
  lemmas_cmd->add_option("--seed", lemma_seed, "random seed");
  lemmas_cmd->add_option("--trials", trials, "number of random contractions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(mpzeno::ExitCode::validation);
  }

  try {
    if (*run_cmd) return run_command(scenario_path, norm, out, seed);
    if (*coeffs_cmd) {
      if (order < 0 || order > 8)
        throw mpzeno::ValidationError("usage", "coeffs needs --order in [0, 8]");
      std::cout << mpzeno::coeffs_table(order);
      return 0;
    }
    if (*spectrum_cmd) return spectrum_command(spectrum_path);
    if (*lemmas_cmd) {
      if (trials < 1) throw mpzeno::ValidationError("usage", "verify-lemmas needs --trials >= 1");
      mpzeno::LemmaSuite suite = mpzeno::verify_lemmas(static_cast<unsigned>(lemma_seed), trials);
      std::cout << mpzeno::lemma_suite_table(suite);
      return suite.all_pass ? 0 : static_cast<int>(mpzeno::ExitCode::numerical);
    }
  } catch (const mpzeno::Error& err) {
    std::cerr << "error: " << err.name() << ": " << err.what() << "\n";
    return static_cast<int>(err.exit_code());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return static_cast<int>(mpzeno::ExitCode::numerical);
  }
  return 0;
}
