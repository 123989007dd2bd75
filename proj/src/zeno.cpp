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

#include "mpzeno/zeno.hpp"

#include <cmath>

#include "mpzeno/errors.hpp"
#include "mpzeno/fitting.hpp"

namespace mpzeno {

namespace {

Complex int_pow(Complex base, long n) {
  Complex result = 1.0;
  Complex acc = base;
  while (n > 0) {
    if (n & 1) result *= acc;
    n >>= 1;
    if (n > 0) acc *= acc;
  }
  return result;
}

void require_idempotent(const Matrix& p, const char* who) {
  if (p.rows() != p.cols()) throw ValidationError("dimension", std::string(who) + ": P not square");
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("non_projection", std::string(who) + ": P is not idempotent within 1e-10");
}

}  // namespace

double superop_norm(const Matrix& a, NormKind kind, unsigned seed) {
  return kind == NormKind::spectral ? spectral_norm(a) : one_to_one_lower_estimate(a, seed);
}

ZenoStep make_zeno_step(Superoperator kick, Superoperator generator, double time) {
  if (kick.dim != generator.dim || kick.matrix.rows() != generator.matrix.rows())
    throw ValidationError("dimension", "kick and generator must share the dimension");
  if (kick.matrix.rows() != kick.dim * kick.dim)
    throw ValidationError("dimension", "superoperator matrix is not d^2 x d^2");
  if (time < 0.0) throw ValidationError("tolerance", "evolution time must be non-negative");
  if (one_to_one_lower_estimate(kick) > 1.0 + 1e-8)
    throw ValidationError("not_contraction", "kick fails the 1->1 contraction estimate");
  return {std::move(kick), std::move(generator), time};
}

Superoperator zeno_product(const ZenoStep& step, long n) {
  if (n < 1) throw ValidationError("tolerance", "zeno_product needs n >= 1");
  Matrix stride = step.kick.matrix * mat_exp((step.time / n) * step.generator.matrix);
  op_counters().multiplications.fetch_add(1, std::memory_order_relaxed);
  Matrix result = mat_pow(stride, n);
  // Blow-up guard: quantum operations keep ||.||_{2->2} <= sqrt(d) because
  // ||.||_{2->2} <= sqrt(d) ||.||_{1->1}.
  double guard = 10.0 * std::sqrt(static_cast<double>(step.kick.dim));
  if (spectral_norm(result) > guard)
    throw NumericalError("instability", "zeno product norm exceeded 10x its contraction bound");
  return {step.kick.dim, std::move(result)};
}

EffectiveDynamics effective_dynamics(const SpectralSplit& split, const Matrix& l) {
  EffectiveDynamics dyn;
  for (const auto& comp : split.peripheral)
    dyn.terms.push_back({comp.lambda, comp.projector, comp.projector * l * comp.projector});
  return dyn;
}

EffectiveLimitCache effective_exponentials(const EffectiveDynamics& dyn, double t) {
  EffectiveLimitCache cache;
  for (const auto& term : dyn.terms) {
    cache.lambdas.push_back(term.lambda);
    cache.exp_projected.push_back(mat_exp(t * term.generator) * term.projector);
  }
  return cache;
}

Matrix effective_limit(const EffectiveLimitCache& cache, long n) {
  if (cache.exp_projected.empty())
    throw ValidationError("dimension", "effective limit needs at least one peripheral term");
  Matrix acc = Matrix::Zero(cache.exp_projected.front().rows(), cache.exp_projected.front().cols());
  for (std::size_t j = 0; j < cache.exp_projected.size(); ++j)
    acc += int_pow(cache.lambdas[j], n) * cache.exp_projected[j];
  return acc;
}

Matrix effective_limit(const EffectiveDynamics& dyn, double t, long n) {
  return effective_limit(effective_exponentials(dyn, t), n);
}

double zeno_error(const ZenoStep& step, const EffectiveDynamics& dyn, long n, NormKind kind,
                  unsigned seed) {
  Matrix diff = zeno_product(step, n).matrix - effective_limit(dyn, step.time, n);
  return superop_norm(diff, kind, seed);
}

Matrix first_order_term(const Matrix& p_superop, const Matrix& l, double t,
                        const QuadratureRule& quad) {
  require_idempotent(p_superop, "first_order_term");
  if (quad.order() < 16)
    throw ValidationError("tolerance", "first_order_term needs quadrature order >= 16");
  if (l.rows() != p_superop.rows() || l.cols() != p_superop.cols())
    throw ValidationError("dimension", "P and L must match");

  const Matrix& p = p_superop;
  Matrix g = p * l * p;
  Matrix core = p * l * (l * p - p * l) * p;  // PL[L,P]P
  Matrix integral = integrate_matrix(
      [&](double tau) -> Matrix { return mat_exp(tau * t * g) * core * mat_exp((1.0 - tau) * t * g); },
      quad);
  Matrix complement = Matrix::Identity(p.rows(), p.cols()) - p;
  return 0.5 * t * t * integral + t * (mat_exp(t * g) * p * l * complement);
}

double second_order_bound(const Matrix& p_superop, const Matrix& l, double t, NormKind kind,
                          unsigned seed) {
  require_idempotent(p_superop, "second_order_bound");
  double norm_pl2 = superop_norm(p_superop * l * l, kind, seed);
  double norm_lp = superop_norm(l * p_superop, kind, seed);
  double inner = 1.0 + 2.0 * t * t * norm_pl2 + t * norm_lp * (4.0 + t * norm_lp);
  return 0.5 * inner * inner;
}

RichardsonResult richardson_fit(const std::vector<long>& n_list, int k_order,
                                const std::function<Matrix(long)>& error_at) {
  if (k_order < 1) throw ValidationError("tolerance", "richardson fit needs K >= 1");
  if (static_cast<long>(n_list.size()) < k_order + 2)
    throw ValidationError("tolerance", "richardson fit needs at least K + 2 sample points");
  for (std::size_t i = 0; i < n_list.size(); ++i)
    for (std::size_t j = i + 1; j < n_list.size(); ++j)
      if (n_list[i] == n_list[j])
        throw ValidationError("tolerance", "richardson sample points must be distinct");

  const int m = static_cast<int>(n_list.size());
  std::vector<Matrix> errors;
  errors.reserve(m);
  for (long n : n_list) errors.push_back(error_at(n));
  const Index rows = errors.front().rows(), cols = errors.front().cols();

  // Shared scaled Vandermonde design in 1/n, one least-squares solve reused
  // for every matrix entry. A guard column at order K+1 absorbs the leading
  // part of the remainder, so the returned E_1..E_K are not contaminated by
  // it and the reported residual scales as 1/n^{K+1}.
  const int columns = k_order + 1;
  Eigen::MatrixXd design(m, columns);
  for (int i = 0; i < m; ++i)
    for (int k = 1; k <= columns; ++k)
      design(i, k - 1) = std::pow(1.0 / static_cast<double>(n_list[i]), k);
  Eigen::VectorXd column_scale = design.cwiseAbs().colwise().maxCoeff();
  Eigen::MatrixXd scaled = design * column_scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double condition = svd.singularValues()(0) / svd.singularValues()(columns - 1);
  if (!(condition < 1e10))
    throw NumericalError("fit_degenerate",
                         "richardson design matrix condition " + std::to_string(condition) +
                             " exceeds 1e10; use fewer orders or a geometric n-grid");

  Matrix rhs(m, rows * cols);
  for (int i = 0; i < m; ++i)
    rhs.row(i) = Eigen::Map<const Vector>(errors[i].data(), rows * cols).transpose();
  Matrix solution = svd.solve(rhs);

  RichardsonResult result;
  result.condition = condition;
  for (int k = 1; k <= k_order; ++k) {
    Vector entries = solution.row(k - 1).transpose() / column_scale(k - 1);
    result.terms.push_back(Eigen::Map<const Matrix>(entries.data(), rows, cols));
  }

  double floor = 0.0;
  for (int i = 0; i < m; ++i) {
    Matrix remainder = errors[i];
    for (int k = 1; k <= k_order; ++k)
      remainder -= result.terms[k - 1] * std::pow(1.0 / static_cast<double>(n_list[i]), k);
    double norm = spectral_norm(remainder);
    result.residuals.emplace_back(n_list[i], norm);
    floor = std::max(floor, 1e-13 * spectral_norm(errors[i]));
  }

  std::vector<double> xs, ys;
  for (const auto& [n, r] : result.residuals) {
    if (r > floor) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(r));
    }
  }
  result.residual_slope = xs.size() >= 2 ? linear_fit(xs, ys).slope : 0.0;
  return result;
}

RichardsonResult richardson_extract(const ZenoStep& step, const EffectiveDynamics& dyn,
                                    const std::vector<long>& n_list, int k_order) {
  EffectiveLimitCache cache = effective_exponentials(dyn, step.time);
  return richardson_fit(n_list, k_order, [&](long n) -> Matrix {
    return zeno_product(step, n).matrix - effective_limit(cache, n);
  });
}

double chernoff_residual(const Matrix& c, long n, const QuadratureRule& quad) {
  if (c.rows() != c.cols()) throw ValidationError("dimension", "chernoff residual needs square C");
  if (spectral_norm(c) > 1.0 + 1e-12)
    throw ValidationError("not_contraction", "C is not a contraction");
  if (n < 1) throw ValidationError("tolerance", "chernoff residual needs n >= 1");
  if (quad.order() < 32)
    throw ValidationError("tolerance", "chernoff residual needs quadrature order >= 32");

  const Index d = c.rows();
  Matrix id = Matrix::Identity(d, d);
  Matrix generator = c - id;

  Matrix lhs = mat_pow(c, n) - mat_exp(static_cast<double>(n) * generator);
  Matrix integral = integrate_matrix(
      [&](double tau) -> Matrix {
        Matrix convex = (1.0 - tau) * id + tau * c;
        return tau * mat_pow(convex, n - 1) * mat_exp((1.0 - tau) * n * generator);
      },
      quad);
  Matrix rhs = -static_cast<double>(n) * generator * generator * integral;
  return spectral_norm(lhs - rhs);
}

double dunford_segal_residual(const Matrix& p_superop, const Matrix& l, double t, double s1,
                              double s2, const QuadratureRule& quad) {
  require_idempotent(p_superop, "dunford_segal_residual");
  if (l.rows() != p_superop.rows() || l.cols() != p_superop.cols())
    throw ValidationError("dimension", "P and L must match");
  if (!(t > 0.0 && t <= 1.0 && s1 > 0.0 && s1 <= 1.0 && s2 > 0.0 && s2 <= 1.0))
    throw ValidationError("tolerance", "t, s1, s2 must lie in (0, 1]");
  if (quad.order() < 16)
    throw ValidationError("tolerance", "dunford-segal residual needs quadrature order >= 16 per axis");

  const Matrix& p = p_superop;
  Matrix c_s2 = p * mat_exp(s2 * l) * p;         // C(s2)
  Matrix c_prime = p * l * p;                    // C'(0)
  Matrix generator = (t / s1) * (c_s2 - p);      // on the range of P

  Matrix lhs = mat_exp(generator) - mat_exp(t * c_prime);

  // Tensor-product triple integral; the middle factor is independent of
  // tau_1, so the inner double sum is formed once.
  Matrix middle = integrate_matrix2(
      [&](double tau2, double tau3) -> Matrix {
        Matrix c_second = p * l * mat_exp(tau3 * tau2 * s2 * l) * l * p;  // C''(tau3 tau2 s2)
        return tau2 * c_second + ((s2 - s1) / (s2 * s2)) * c_prime;
      },
      quad);
  Matrix rhs = integrate_matrix(
      [&](double tau1) -> Matrix {
        return mat_exp((1.0 - tau1) * generator) * middle * mat_exp(tau1 * t * c_prime);
      },
      quad);
  rhs *= t * s2 * s2 / s1;

  return spectral_norm((lhs - rhs) * p);
}

}  // namespace mpzeno
