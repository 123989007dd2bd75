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

#include "mpzeno/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

namespace mpzeno {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// Typed access to the scenario's free-form parameter block; every key must be
// consumed, unknown keys are validation errors naming the offender.
class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, std::string>& params) : params_(params) {}

  double get_double(const std::string& key, double fallback) {
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    used_.insert(key);
    try {
      return std::stod(it->second);
    } catch (const std::exception&) {
      throw ValidationError("parse", "parameter '" + key + "': bad number '" + it->second + "'");
    }
  }

  long get_long(const std::string& key, long fallback) {
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    used_.insert(key);
    try {
      return std::stol(it->second);
    } catch (const std::exception&) {
      throw ValidationError("parse", "parameter '" + key + "': bad integer '" + it->second + "'");
    }
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    used_.insert(key);
    return it->second;
  }

  bool has(const std::string& key) const { return params_.count(key) > 0; }

  void finish() const {
    for (const auto& [key, value] : params_)
      if (!used_.count(key))
        throw ValidationError("parse", "unknown parameter '" + key + "' for this system");
  }

 private:
  const std::map<std::string, std::string>& params_;
  std::set<std::string> used_;
};

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

SystemModel build_qubit(const Scenario& sc) {
  ParamReader params(sc.params);
  double theta = params.get_double("theta", 0.0);
  params.finish();

  SystemModel model;
  model.dim = 2;
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  model.kick = projector_channel(p);
  model.generator = hamiltonian_generator(std::cos(theta) * pauli_x() + std::sin(theta) * pauli_z());
  return model;
}

SystemModel build_cat(const Scenario& sc) {
  ParamReader params(sc.params);
  double alpha = params.get_double("alpha", 2.0);
  long fock_dim = params.get_long("fock_dim", 25);
  double theta = params.get_double("theta", M_PI / 2.0);
  params.finish();

  validate_cat_spec({alpha, fock_dim});

  SystemModel model;
  model.is_cat = true;
  model.dim = fock_dim;
  model.alpha = alpha;
  model.theta = theta;
  auto [cat_even, cat_odd] = cat_states(alpha, fock_dim);
  model.cat_even = cat_even;
  model.cat_odd = cat_odd;
  auto [cat_p, cat_x] = cat_projectors(alpha, fock_dim);
  model.cat_p = cat_p;
  model.cat_x = cat_x;

  Matrix a = annihilation(fock_dim);
  model.kick = projector_channel(cat_p);
  model.generator = hamiltonian_generator(a + a.adjoint().eval());
  return model;
}

SystemModel build_decoupling(const Scenario& sc) {
  ParamReader params(sc.params);
  long bath_levels = params.get_long("J", 2);
  double coupling = params.get_double("g", 0.8);
  double bath_scale = params.get_double("bath_scale", 0.7);
  params.finish();
  if (bath_levels < 2) throw ValidationError("parse", "decoupling needs J >= 2");

  const Index d1 = 2, d2 = bath_levels;
  DecouplingSpec spec;
  spec.h1 = pauli_z();
  spec.h2 = Matrix::Zero(d2, d2);
  for (Index i = 0; i < d2; ++i) spec.h2(i, i) = bath_scale * static_cast<double>(i);
  Matrix bath_coupling = Matrix::Zero(d2, d2);
  bath_coupling(0, 0) = 1.0;
  spec.couplings.emplace_back(coupling * pauli_x(), bath_coupling);

  // Ergodic bath kick: dephase in the energy basis, then cycle it. Peripheral
  // eigenvalues are exactly the J-th roots of unity with fixed point 1/J.
  std::vector<Matrix> kraus;
  for (Index i = 0; i < d2; ++i) {
    Matrix op = Matrix::Zero(d2, d2);
    op((i + 1) % d2, i) = 1.0;
    kraus.push_back(op);
  }
  spec.bath_channel = kraus_channel(kraus);

  SystemModel model;
  model.is_decoupling = true;
  model.dim = d1 * d2;
  model.dim_system = d1;
  model.dim_bath = d2;
  model.rho_star = fixed_point(spec.bath_channel);
  model.hdec = h_dec(spec, model.rho_star);

  std::vector<Matrix> lifted;
  for (const Matrix& op : kraus) lifted.push_back(kron(Matrix::Identity(d1, d1), op));
  model.kick = kraus_channel(lifted);
  model.generator = hamiltonian_generator(decoupling_hamiltonian(spec));
  return model;
}

SystemModel build_custom(const Scenario& sc) {
  ParamReader params(sc.params);
  std::string m_file = params.get_string("m_file", "");
  std::string h_file = params.get_string("h_file", "");
  std::string l_file = params.get_string("l_file", "");
  params.finish();
  if (m_file.empty()) throw ValidationError("parse", "custom system needs m_file");
  if (h_file.empty() == l_file.empty())
    throw ValidationError("parse", "custom system needs exactly one of h_file or l_file");

  auto resolve = [&](const std::string& p) {
    return (p.empty() || p.front() == '/') ? p : sc.base_dir + "/" + p;
  };

  Matrix m = read_matrix_file(resolve(m_file));
  if (m.rows() != m.cols()) throw ValidationError("dimension", "custom M must be square");
  auto dim = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (dim * dim != m.rows())
    throw ValidationError("dimension", "custom M must be d^2 x d^2");

  SystemModel model;
  model.dim = dim;
  model.kick = Superoperator{dim, std::move(m)};
  validate_channel(model.kick);

  if (!h_file.empty()) {
    Matrix h = read_matrix_file(resolve(h_file));
    if (h.rows() != dim || h.cols() != dim)
      throw ValidationError("dimension", "custom H must be d x d");
    model.generator = hamiltonian_generator(h);
  } else {
    Matrix l = read_matrix_file(resolve(l_file));
    if (l.rows() != dim * dim || l.cols() != dim * dim)
      throw ValidationError("dimension", "custom L must be d^2 x d^2");
    Superoperator gen{dim, std::move(l)};
    // Necessary condition for a Lindblad generator: vec-trace annihilation.
    Vector vec_id = vectorize(Matrix::Identity(dim, dim));
    if ((gen.matrix.adjoint() * vec_id).norm() > 1e-10)
      throw ValidationError("not_channel", "custom L does not annihilate the trace functional");
    model.generator = std::move(gen);
  }
  return model;
}

Matrix sum_peripheral_projectors(const SpectralSplit& split) {
  Matrix acc = split.peripheral.front().projector;
  for (std::size_t j = 1; j < split.peripheral.size(); ++j) acc += split.peripheral[j].projector;
  return acc;
}

}  // namespace

double fit_cat_frequency(const SystemModel& model, const SpectralSplit& split) {
  Matrix code_projector = sum_peripheral_projectors(split);
  Matrix g = code_projector * model.generator.matrix * code_projector;
  // Probe time short enough to keep omega * s below pi/2 for omega ~ 2 alpha.
  double probe = 0.5 / (2.0 * model.alpha + 1.0);
  Matrix rho_plus = model.cat_even * model.cat_even.adjoint();
  Matrix evolved = devectorize(mat_exp(probe * g) * code_projector * vectorize(rho_plus));
  double stay = std::clamp((model.cat_even.adjoint() * evolved * model.cat_even)(0).real(), 0.0, 1.0);
  double flip = std::clamp((model.cat_odd.adjoint() * evolved * model.cat_odd)(0).real(), 0.0, 1.0);
  return std::atan2(std::sqrt(flip), std::sqrt(stay)) / probe;
}

SystemModel build_system(const Scenario& sc) {
  if (sc.system == "qubit_projective") return build_qubit(sc);
  if (sc.system == "cat_code") return build_cat(sc);
  if (sc.system == "decoupling") return build_decoupling(sc);
  if (sc.system == "custom") return build_custom(sc);
  throw ValidationError("parse", "unknown system '" + sc.system + "'");
}

RunReport run_scenario(const Scenario& sc) {
  RunReport report;
  report.name = sc.name;
  report.system = sc.system;
  report.norm_kind = sc.norm_kind;

  auto t_build = Clock::now();
  SystemModel model = build_system(sc);
  report.timings.emplace_back("build", seconds_since(t_build));

  auto t_split = Clock::now();
  SpectralSplit split = peripheral_split(model.kick, sc.gap_tol);
  std::vector<Complex> phases;
  for (const auto& comp : split.peripheral) {
    report.lambdas.push_back(comp.lambda);
    phases.push_back(comp.lambda / std::abs(comp.lambda));
  }
  report.period = period_of_phases(phases, sc.phase_tol, sc.q_max);
  PowerConvergenceFit power = power_convergence_fit(model.kick.matrix, split, sc.power_n_max);
  split.c_est = power.c_est;
  report.delta = split.delta;
  report.c_est = power.c_est;
  report.delta_emp = power.delta_emp;
  report.timings.emplace_back("split", seconds_since(t_split));

  double time = sc.time.value_or(1.0);
  double omega = 0.0;
  if (model.is_cat) {
    omega = fit_cat_frequency(model, split);
    if (!sc.time.has_value()) time = 0.5 * model.theta / omega;  // theta/2 = omega t
  }
  report.time = time;

  ZenoStep step = make_zeno_step(model.kick, model.generator, time);
  EffectiveDynamics dyn = effective_dynamics(split, model.generator.matrix);
  EffectiveLimitCache cache = effective_exponentials(dyn, time);

  Matrix limit_order = Matrix::Zero(step.kick.matrix.rows(), step.kick.matrix.cols());
  Matrix limit_lambda = limit_order;
  for (std::size_t j = 0; j < cache.exp_projected.size(); ++j) {
    limit_order += cache.exp_projected[j];
    limit_lambda += cache.lambdas[j] * cache.exp_projected[j];
  }
  double floor = 10.0 * std::numeric_limits<double>::epsilon() * spectral_norm(limit_order);

  auto t_sweep = Clock::now();
  long order_wins = 0, lambda_wins = 0;
  for (int k : sc.k_orders) {
    MPFScheme scheme = build_scheme(k, phases, sc.q_max, sc.n_grid.front(), sc.phase_tol);
    std::vector<std::pair<long, double>> points;
    for (long n : sc.n_grid) {
      auto t_cell = Clock::now();
      Matrix value = mpf_evaluate(step, scheme, n).matrix;
      SweepRow row;
      row.scheme = (k == 0) ? "zeno" : "mpf";
      row.k = k;
      row.period = scheme.period;
      row.n = n;
      row.error = superop_norm(value - limit_order, sc.norm_kind, sc.seed);
      row.error_lambda = superop_norm(value - limit_lambda, sc.norm_kind, sc.seed);
      row.seconds = seconds_since(t_cell);
      report.rows.push_back(row);
      points.emplace_back(n, row.error);
      if (row.error <= row.error_lambda)
        ++order_wins;
      else
        ++lambda_wins;
    }
    ConvergenceReport fit = fit_order(points, floor);
    SlopeSummary summary;
    summary.k = k;
    summary.slope = fit.slope;
    summary.intercept = fit.intercept;
    summary.r_squared = fit.r_squared;
    for (const auto& [n, error] : fit.excluded) summary.excluded_n.push_back(n);
    summary.pass = fit.slope <= -(static_cast<double>(k) + 0.6);
    report.slopes.push_back(summary);
  }
  report.timings.emplace_back("sweep", seconds_since(t_sweep));
  report.consistent_limit = (order_wins >= lambda_wins) ? "order" : "lambda";

  if (model.is_cat) {
    CatReport cat;
    cat.omega = omega;
    cat.omega_over_alpha = omega / model.alpha;
    cat.time = time;
    // The projected limit should be conjugation by cos(wt) P -+ i sin(wt) X.
    double angle = omega * time;
    Matrix rot_minus = std::cos(angle) * model.cat_p - Complex(0, 1) * std::sin(angle) * model.cat_x;
    Matrix rot_plus = std::cos(angle) * model.cat_p + Complex(0, 1) * std::sin(angle) * model.cat_x;
    double res_minus =
        spectral_norm(limit_order - sandwich_superop(rot_minus, rot_minus.adjoint()).matrix);
    double res_plus =
        spectral_norm(limit_order - sandwich_superop(rot_plus, rot_plus.adjoint()).matrix);
    cat.rotation_residual = std::min(res_minus, res_plus);
    cat.rotation_sign = res_minus <= res_plus ? "cos(wt)P - i sin(wt)X" : "cos(wt)P + i sin(wt)X";
    report.cat = cat;
  }

  if (model.is_decoupling) {
    DecouplingReport dec;
    dec.error_band = report.rows.empty() ? 0.0 : report.rows.back().error;
    for (const auto& row : report.rows) dec.error_band = std::min(dec.error_band, row.error);
    Matrix u = mat_exp(Complex(0, -1) * time * model.hdec);
    std::mt19937_64 rng(sc.seed + 7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Matrix g(model.dim_system, model.dim_system);
      for (Index i = 0; i < model.dim_system; ++i)
        for (Index j = 0; j < model.dim_system; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
      Matrix rho = g * g.adjoint();
      rho /= rho.trace();
      Matrix full = kron(rho, model.rho_star);
      Matrix evolved = devectorize(limit_order * vectorize(full));
      Matrix system_out = partial_trace_second(evolved, model.dim_system, model.dim_bath);
      worst = std::max(worst, (system_out - u * rho * u.adjoint()).norm());
    }
    dec.hdec_residual = worst;
    dec.pass = worst <= std::max(dec.error_band, 1e-9);
    report.decoupling = dec;
  }

  if (sc.lemmas) {
    LemmaReport lemma;
    Matrix contraction = step.kick.matrix * mat_exp((time / 8.0) * step.generator.matrix);
    lemma.chernoff = chernoff_residual(contraction, 8, gauss_legendre(32));
    Matrix p_lemma = sum_peripheral_projectors(split);
    lemma.dunford_segal =
        dunford_segal_residual(p_lemma, step.generator.matrix, 0.25, 0.25, 0.25, gauss_legendre(16));
    report.lemmas = lemma;
  }

  report.accepted = true;
  for (const auto& slope : report.slopes) report.accepted = report.accepted && slope.pass;
  if (report.decoupling) report.accepted = report.accepted && report.decoupling->pass;
  return report;
}

std::string report_csv(const RunReport& report) {
  std::ostringstream out;
  out << "scheme,K,p,n,error,norm_kind,seconds\n";
  const char* norm_name = report.norm_kind == NormKind::spectral ? "spectral" : "one11";
  for (const auto& row : report.rows) {
    out << row.scheme << "," << row.k << "," << row.period << "," << row.n << ","
        << fmt17(row.error) << "," << norm_name << "," << fmt17(row.seconds) << "\n";
  }
  out << "# name=" << report.name << " system=" << report.system << "\n";
  out << "# split:";
  for (const auto& lambda : report.lambdas)
    out << " lambda=" << fmt17(lambda.real()) << (lambda.imag() < 0 ? "-" : "+")
        << fmt17(std::abs(lambda.imag())) << "i";
  out << " delta=" << fmt17(report.delta) << " c_est=" << fmt17(report.c_est)
      << " delta_emp=" << fmt17(report.delta_emp) << " period=" << report.period << "\n";
  for (const auto& slope : report.slopes) {
    out << "# K=" << slope.k << " slope=" << fmt17(slope.slope)
        << " intercept=" << fmt17(slope.intercept) << " r2=" << fmt17(slope.r_squared)
        << " pass=" << (slope.pass ? 1 : 0);
    if (!slope.excluded_n.empty()) {
      out << " below_floor_n=";
      for (std::size_t i = 0; i < slope.excluded_n.size(); ++i)
        out << slope.excluded_n[i] << (i + 1 < slope.excluded_n.size() ? "+" : "");
    }
    out << "\n";
  }
  out << "# consistent_limit=" << report.consistent_limit << "\n";
  return out.str();
}

nlohmann::json report_json(const RunReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["system"] = report.system;
  j["norm"] = report.norm_kind == NormKind::spectral ? "spectral" : "one11";
  j["t"] = report.time;

  nlohmann::json split;
  for (const auto& lambda : report.lambdas)
    split["lambdas"].push_back({lambda.real(), lambda.imag()});
  split["delta"] = report.delta;
  split["c_est"] = report.c_est;
  split["delta_emp"] = report.delta_emp;
  split["period"] = report.period;
  j["split"] = split;

  for (const auto& row : report.rows)
    j["rows"].push_back({{"scheme", row.scheme},
                         {"K", row.k},
                         {"p", row.period},
                         {"n", row.n},
                         {"error", row.error},
                         {"error_lambda_limit", row.error_lambda},
                         {"seconds", row.seconds}});
  for (const auto& slope : report.slopes)
    j["slopes"].push_back({{"K", slope.k},
                           {"slope", slope.slope},
                           {"intercept", slope.intercept},
                           {"r_squared", slope.r_squared},
                           {"below_floor_n", slope.excluded_n},
                           {"pass", slope.pass}});
  j["consistent_limit"] = report.consistent_limit;

  if (report.cat)
    j["cat"] = {{"omega", report.cat->omega},
                {"omega_over_alpha", report.cat->omega_over_alpha},
                {"t", report.cat->time},
                {"rotation_residual", report.cat->rotation_residual},
                {"rotation_sign", report.cat->rotation_sign}};
  if (report.decoupling)
    j["decoupling"] = {{"hdec_residual", report.decoupling->hdec_residual},
                       {"error_band", report.decoupling->error_band},
                       {"pass", report.decoupling->pass}};
  if (report.lemmas)
    j["lemmas"] = {{"chernoff", report.lemmas->chernoff},
                   {"dunford_segal", report.lemmas->dunford_segal}};

  for (const auto& [phase, secs] : report.timings) j["timings"][phase] = secs;
  j["accepted"] = report.accepted;
  return j;
}

std::string coeffs_table(int k_order) {
  std::vector<Rational> exact = vandermonde_coeffs_exact(k_order);
  std::ostringstream out;
  out << "exact: ";
  for (std::size_t i = 0; i < exact.size(); ++i)
    out << exact[i].str() << (i + 1 < exact.size() ? ", " : "\n");
  out << "decimal: ";
  for (std::size_t i = 0; i < exact.size(); ++i)
    out << fmt17(exact[i].to_double()) << (i + 1 < exact.size() ? ", " : "\n");
  return out.str();
}

LemmaSuite verify_lemmas(unsigned seed, int trials) {
  if (trials < 1) throw ValidationError("usage", "verify-lemmas needs trials >= 1");
  LemmaSuite suite;
  QuadratureRule single = gauss_legendre(32);
  QuadratureRule triple = gauss_legendre(16);

  auto push = [&](const std::string& label, double chernoff, double ds) {
    suite.cases.push_back({label, chernoff, ds});
    suite.max_residual = std::max({suite.max_residual, chernoff, ds});
  };

  // Exact-zero row: both sides of each identity vanish.
  Matrix id3 = Matrix::Identity(3, 3);
  push("identity", chernoff_residual(id3, 8, single),
       dunford_segal_residual(id3, Matrix::Zero(3, 3), 0.25, 0.25, 0.25, triple));

  {
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1.0;
    Superoperator kick = projector_channel(p);
    Superoperator gen = hamiltonian_generator(pauli_x());
    Matrix contraction = kick.matrix * mat_exp(0.125 * gen.matrix);
    push("qubit", chernoff_residual(contraction, 8, single),
         dunford_segal_residual(kick.matrix, gen.matrix, 0.25, 0.25, 0.25, triple));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&](Index d) {
    Matrix g(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return g;
  };

  for (int trial = 0; trial < trials; ++trial) {
    Matrix contraction = random_matrix(3);
    contraction /= spectral_norm(contraction);
    long n = (trial % 2 == 0) ? 8 : 16;
    double chernoff = chernoff_residual(contraction, n, single);

    // Contractive semigroup generator: shift the numerical abscissa to zero.
    Matrix l = random_matrix(3);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (l + l.adjoint().eval()), Eigen::EigenvaluesOnly);
    l -= es.eigenvalues().maxCoeff() * id3;
    // Rank-2 orthogonal projector from a random isometry.
    Eigen::HouseholderQR<Matrix> qr(random_matrix(3));
    Matrix q = qr.householderQ();
    Matrix p = q.leftCols(2) * q.leftCols(2).adjoint();
    double ds = dunford_segal_residual(p, l, 0.25, 0.25, 0.25, triple);

    push("random-" + std::to_string(trial), chernoff, ds);
  }

  suite.all_pass = suite.max_residual < 1e-6;
  return suite;
}

std::string lemma_suite_table(const LemmaSuite& suite) {
  std::ostringstream out;
  out << "case                chernoff       dunford-segal\n";
  for (const auto& item : suite.cases) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-18s  %-13.3e  %-13.3e\n", item.label.c_str(),
                  item.chernoff, item.dunford_segal);
    out << line;
  }
  out << "max residual: " << fmt17(suite.max_residual) << (suite.all_pass ? " (< 1e-6)" : " (FAIL)")
      << "\n";
  return out.str();
}

}  // namespace mpzeno
