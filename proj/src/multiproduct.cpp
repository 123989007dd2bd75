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

#include "mpzeno/multiproduct.hpp"

#include <cmath>

#include "mpzeno/fitting.hpp"

namespace mpzeno {

namespace {

Rational int_pow_rational(long long base, int exp) {
  Rational r(1);
  for (int i = 0; i < exp; ++i) r = r * Rational(base);
  return r;
}

std::vector<Rational> closed_form_coeffs(int k_order) {
  // c_l = (-1)^{K+1-l} l^{K+1} / (l! (K+1-l)!)
  std::vector<Rational> c;
  for (int l = 1; l <= k_order + 1; ++l) {
    long long num_fact = 1, den_fact = 1;
    for (int i = 2; i <= l; ++i) num_fact *= i;
    for (int i = 2; i <= k_order + 1 - l; ++i) den_fact *= i;
    Rational value = int_pow_rational(l, k_order + 1) / Rational(num_fact * den_fact);
    if ((k_order + 1 - l) % 2 != 0) value = Rational(0) - value;
    c.push_back(value);
  }
  return c;
}

}  // namespace

std::vector<Rational> vandermonde_coeffs_exact(int k_order) {
  if (k_order < 0 || k_order > 8)
    throw ValidationError("conditioning",
                          "K must lie in [0, 8]; larger orders need an extended exact-rational mode");
  const int size = k_order + 1;

  // Rows (1/l^k) for k = 0..K, right-hand side e_0; exact Gaussian elimination.
  std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size));
  std::vector<Rational> rhs(size, Rational(0));
  rhs[0] = Rational(1);
  for (int k = 0; k < size; ++k)
    for (int l = 1; l <= size; ++l) a[k][l - 1] = Rational(1) / int_pow_rational(l, k);

  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int row = col; row < size; ++row)
      if (!(a[row][col] == Rational(0))) {
        pivot = row;
        break;
      }
    if (pivot < 0) throw NumericalError("conditioning", "singular Vandermonde system");
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int row = 0; row < size; ++row) {
      if (row == col) continue;
      Rational factor = a[row][col] / a[col][col];
      if (factor == Rational(0)) continue;
      for (int j = col; j < size; ++j) a[row][j] = a[row][j] - factor * a[col][j];
      rhs[row] = rhs[row] - factor * rhs[col];
    }
  }
  std::vector<Rational> solution(size);
  for (int i = 0; i < size; ++i) solution[i] = rhs[i] / a[i][i];

  std::vector<Rational> closed = closed_form_coeffs(k_order);
  for (int i = 0; i < size; ++i) {
    if (!(solution[i] == closed[i]))
      throw NumericalError("conditioning", "Vandermonde solve disagrees with the closed form");
  }
  return solution;
}

std::vector<double> vandermonde_coeffs(int k_order) {
  std::vector<double> out;
  for (const Rational& r : vandermonde_coeffs_exact(k_order)) out.push_back(r.to_double());
  return out;
}

MPFScheme build_scheme(int k_order, const std::vector<Complex>& phases, long q_max, long base_n,
                       double phase_tol) {
  MPFScheme scheme;
  scheme.k_order = k_order;
  scheme.coeffs = vandermonde_coeffs(k_order);
  scheme.period = period_of_phases(phases, phase_tol, q_max);
  scheme.base_n = base_n;
  return scheme;
}

Matrix mpf_combine(const MPFScheme& scheme, long n, const std::function<Matrix(long)>& product_at) {
  if (n < 1) throw ValidationError("tolerance", "mpf needs n >= 1");
  Matrix acc;
  for (std::size_t l = 1; l <= scheme.coeffs.size(); ++l) {
    Matrix term = product_at(static_cast<long>(l) * scheme.period * n);
    if (l == 1)
      acc = scheme.coeffs[l - 1] * term;
    else
      acc += scheme.coeffs[l - 1] * term;
  }
  return acc;
}

Superoperator mpf_evaluate(const ZenoStep& step, const MPFScheme& scheme, long n) {
  Matrix combined = mpf_combine(
      scheme, n, [&](long substeps) -> Matrix { return zeno_product(step, substeps).matrix; });
  return {step.kick.dim, std::move(combined)};
}

MpfErrorReport mpf_error_report(const ZenoStep& step, const MPFScheme& scheme,
                                const EffectiveDynamics& dyn, long n, NormKind kind,
                                unsigned seed) {
  Matrix value = mpf_evaluate(step, scheme, n).matrix;
  EffectiveLimitCache cache = effective_exponentials(dyn, step.time);

  Matrix limit_order = Matrix::Zero(value.rows(), value.cols());
  Matrix limit_lambda = Matrix::Zero(value.rows(), value.cols());
  for (std::size_t j = 0; j < cache.exp_projected.size(); ++j) {
    limit_order += cache.exp_projected[j];
    limit_lambda += cache.lambdas[j] * cache.exp_projected[j];
  }

  MpfErrorReport report;
  report.error = superop_norm(value - limit_order, kind, seed);
  report.error_lambda = superop_norm(value - limit_lambda, kind, seed);
  report.order_convention_consistent = report.error <= report.error_lambda;
  return report;
}

double mpf_error(const ZenoStep& step, const MPFScheme& scheme, const EffectiveDynamics& dyn,
                 long n, NormKind kind) {
  return mpf_error_report(step, scheme, dyn, n, kind).error;
}

ConvergenceReport fit_order(const std::vector<std::pair<long, double>>& points, double floor) {
  ConvergenceReport report;
  for (const auto& point : points) {
    if (point.second > floor)
      report.points.push_back(point);
    else
      report.excluded.push_back(point);
  }
  if (report.points.size() < 4)
    throw NumericalError("insufficient_data",
                         "fewer than 4 points above the numerical floor; cannot fit an order");
  std::vector<double> xs, ys;
  for (const auto& [n, error] : report.points) {
    if (!(error > 0.0))
      throw ValidationError("tolerance", "fit_order needs positive errors");
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(error));
  }
  LinearFit fit = linear_fit(xs, ys);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  report.r_squared = fit.r_squared;
  return report;
}

}  // namespace mpzeno
