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

#include "mpzeno/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpzeno/dense.hpp"
#include "mpzeno/errors.hpp"

namespace mpzeno {

namespace {

constexpr double kPeripheralTol = 1e-8;
constexpr double kNilpotentTol = 1e-8;

std::vector<std::vector<Index>> cluster_eigenvalues(const std::vector<Index>& indices,
                                                    const Vector& values, double merge_dist) {
  // Transitive merge of eigenvalues closer than merge_dist; the peripheral
  // counts are tiny, so the quadratic sweep is fine.
  std::vector<std::vector<Index>> clusters;
  std::vector<bool> assigned(indices.size(), false);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (assigned[i]) continue;
    std::vector<Index> cluster{indices[i]};
    assigned[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < indices.size(); ++j) {
        if (assigned[j]) continue;
        for (Index member : cluster) {
          if (std::abs(values[indices[j]] - values[member]) < merge_dist) {
            cluster.push_back(indices[j]);
            assigned[j] = true;
            grew = true;
            break;
          }
        }
      }
    }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

// Resolvent contour sum (r/N) sum_k e^{2 pi i s_k} R(z_k, A) for the circle
// z(s) = c + r e^{2 pi i s}; the trapezoid rule is geometrically accurate for
// this analytic integrand.
Matrix resolvent_contour_sum(const Matrix& a, const ContourSpec& contour, const char* error_name) {
  if (contour.num_nodes < 16)
    throw ValidationError("dimension", "contour needs num_nodes >= 16");
  if (!(contour.radius > 0.0))
    throw ValidationError("dimension", "contour radius must be positive");
  const Index n = a.rows();
  Matrix id = Matrix::Identity(n, n);
  Matrix acc = Matrix::Zero(n, n);
  for (int k = 0; k < contour.num_nodes; ++k) {
    double s = static_cast<double>(k) / contour.num_nodes;
    Complex phase = std::exp(Complex(0.0, 2.0 * M_PI * s));
    Complex z = contour.center + contour.radius * phase;
    Eigen::PartialPivLU<Matrix> lu(z * id - a);
    if (lu.rcond() < 1e-12)
      throw SpectralError(error_name,
                          "resolvent nearly singular at a contour node (condition number > 1e12)");
    acc += phase * lu.solve(id);
  }
  return (contour.radius / contour.num_nodes) * acc;
}

}  // namespace

SpectralSplit peripheral_split(const Matrix& m, double gap_tol) {
  if (m.rows() != m.cols())
    throw ValidationError("dimension", "peripheral_split needs a square matrix");
  if (!(gap_tol > 0.0) || gap_tol >= 0.5)
    throw ValidationError("tolerance", "gap_tol must lie in (0, 0.5)");

  // Hermitian kicks (projector channels, pinchings) get the symmetric solver:
  // orthonormal eigenvectors make the spectral projectors idempotent to
  // machine precision, which keeps the deep end of error sweeps clean.
  Vector values;
  Matrix basis, inverse_basis;
  if (is_hermitian(m, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success)
      throw NumericalError("instability", "eigendecomposition failed in peripheral_split");
    values = es.eigenvalues().cast<Complex>();
    basis = es.eigenvectors();
    inverse_basis = basis.adjoint();
  } else {
    Eigen::ComplexEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success)
      throw NumericalError("instability", "eigendecomposition failed in peripheral_split");
    values = es.eigenvalues();
    basis = es.eigenvectors();
    inverse_basis = basis.inverse();
  }

  std::vector<Index> peripheral_idx;
  double delta = 0.0;
  for (Index i = 0; i < values.size(); ++i) {
    double mod = std::abs(values[i]);
    if (mod > 1.0 - gap_tol) {
      if (mod < 1.0 - kPeripheralTol)
        throw SpectralError("gap_violation",
                            "eigenvalue of modulus " + std::to_string(mod) +
                                " falls inside the gap annulus (1 - gap_tol, 1 - 1e-8)");
      peripheral_idx.push_back(i);
    } else {
      delta = std::max(delta, mod);
    }
  }
  if (peripheral_idx.empty())
    throw SpectralError("gap_violation", "no peripheral eigenvalue found");

  SpectralSplit split;
  split.delta = delta;
  for (const auto& cluster : cluster_eigenvalues(peripheral_idx, values, 2.0 * gap_tol)) {
    Complex lambda = 0.0;
    Matrix projector = Matrix::Zero(m.rows(), m.cols());
    for (Index idx : cluster) {
      lambda += values[idx];
      projector.noalias() += basis.col(idx) * inverse_basis.row(idx);
    }
    lambda /= static_cast<double>(cluster.size());

    double idem = (projector * projector - projector).cwiseAbs().maxCoeff();
    if (idem > kNilpotentTol)
      throw SpectralError("defective_periphery",
                          "peripheral projector not idempotent within 1e-8");
    double nilpotent = spectral_norm((lambda * Matrix::Identity(m.rows(), m.cols()) - m) * projector);
    if (nilpotent > kNilpotentTol)
      throw SpectralError("defective_periphery",
                          "nilpotent residual " + std::to_string(nilpotent) +
                              " on a peripheral eigenvalue (Jordan block on the unit circle)");
    split.peripheral.push_back({lambda, std::move(projector)});
  }

  // P_i P_j ~ 0 for distinct clusters.
  for (std::size_t i = 0; i < split.peripheral.size(); ++i)
    for (std::size_t j = 0; j < split.peripheral.size(); ++j) {
      if (i == j) continue;
      double cross = (split.peripheral[i].projector * split.peripheral[j].projector)
                         .cwiseAbs()
                         .maxCoeff();
      if (cross > kNilpotentTol)
        throw SpectralError("defective_periphery", "peripheral projectors are not disjoint");
    }
  return split;
}

Matrix contour_projection(const Matrix& m, const ContourSpec& contour) {
  if (m.rows() != m.cols())
    throw ValidationError("dimension", "contour_projection needs a square matrix");
  return resolvent_contour_sum(m, contour, "contour_hits_spectrum");
}

Matrix perturbed_projection(const Matrix& m, const Matrix& l, double t, const ContourSpec& contour) {
  if (m.rows() != m.cols() || l.rows() != l.cols() || m.rows() != l.rows())
    throw ValidationError("dimension", "perturbed_projection needs matching square matrices");
  Matrix perturbed = m * mat_exp(t * l);
  return resolvent_contour_sum(perturbed, contour, "epsilon_exceeded");
}

ContourSpec peripheral_contour(const SpectralSplit& split, std::size_t j, int num_nodes) {
  double radius = (1.0 - split.delta) / 3.0;
  for (std::size_t i = 0; i < split.peripheral.size(); ++i) {
    if (i == j) continue;
    radius = std::min(radius,
                      std::abs(split.peripheral[i].lambda - split.peripheral[j].lambda) / 3.0);
  }
  return {split.peripheral[j].lambda, radius, num_nodes};
}

PowerConvergenceFit power_convergence_fit(const Matrix& m, const SpectralSplit& split, long n_max) {
  if (n_max < 1) throw ValidationError("tolerance", "n_max must be >= 1");
  constexpr double kFloor = 1e-14;

  PowerConvergenceFit fit;
  Matrix power = m;
  std::vector<Complex> lambda_pow(split.peripheral.size(), 1.0);
  for (long n = 1; n <= n_max; ++n) {
    Matrix limit = Matrix::Zero(m.rows(), m.cols());
    for (std::size_t j = 0; j < split.peripheral.size(); ++j) {
      lambda_pow[j] *= split.peripheral[j].lambda;
      limit += lambda_pow[j] * split.peripheral[j].projector;
    }
    fit.residuals.emplace_back(n, spectral_norm(power - limit));
    if (n < n_max) power = (power * m).eval();
  }

  std::vector<std::pair<long, double>> usable;
  for (const auto& point : fit.residuals)
    if (point.second > kFloor) usable.push_back(point);
  if (usable.empty()) return fit;  // exact split: (0, 0) sentinel

  // Least squares on log r_n = log c + n log delta over the decaying range.
  double sn = 0, sr = 0, snn = 0, snr = 0;
  for (const auto& [n, r] : usable) {
    double x = static_cast<double>(n), y = std::log(r);
    sn += x;
    sr += y;
    snn += x * x;
    snr += x * y;
  }
  double count = static_cast<double>(usable.size());
  double slope = usable.size() > 1 ? (count * snr - sn * sr) / (count * snn - sn * sn) : 0.0;
  fit.delta_emp = std::exp(slope);

  // Inflate c to the smallest constant certifying r_n <= c delta^n on the
  // fitted range, then verify with the stated relative slack.
  double c = 0.0;
  for (const auto& [n, r] : usable)
    c = std::max(c, r / std::pow(fit.delta_emp, static_cast<double>(n)));
  fit.c_est = c;
  for (const auto& [n, r] : usable) {
    if (r > fit.c_est * std::pow(fit.delta_emp, static_cast<double>(n)) * (1.0 + 1e-6))
      throw NumericalError("fit_degenerate", "power-convergence bound failed to certify");
  }
  return fit;
}

namespace {

// Best rational approximation of x in [0,1) with denominator <= q_max:
// the last continued-fraction convergent that fits, or its best
// semiconvergent with an admissible denominator.
std::pair<long, long> best_rational(double x, long q_max) {
  long p_prev = 1, q_prev = 0;  // convergent h_{-1}/k_{-1}
  long p_cur = 0, q_cur = 1;    // convergent h_0/k_0 for a_0 = 0 (x < 1)
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    if (frac < 1e-15) break;
    double inv = 1.0 / frac;
    double floor_inv = std::floor(inv);
    if (floor_inv > 1e18) break;
    long a = static_cast<long>(floor_inv);
    long p_next = a * p_cur + p_prev;
    long q_next = a * q_cur + q_prev;
    if (q_next > q_max) {
      // Largest semiconvergent (t p_cur + p_prev) / (t q_cur + q_prev) with
      // denominator <= q_max; admissible only from t >= ceil(a/2).
      long t = (q_max - q_prev) / q_cur;
      if (2 * t >= a) {
        long p_semi = t * p_cur + p_prev;
        long q_semi = t * q_cur + q_prev;
        if (std::abs(x - static_cast<double>(p_semi) / q_semi) <
            std::abs(x - static_cast<double>(p_cur) / q_cur))
          return {p_semi, q_semi};
      }
      return {p_cur, q_cur};
    }
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    frac = inv - floor_inv;
  }
  return {p_cur, q_cur};
}

}  // namespace

long period_of_phases(const std::vector<Complex>& lambdas, double tol, long q_max) {
  if (lambdas.empty()) throw ValidationError("dimension", "no phases given");
  if (q_max < 1) throw ValidationError("tolerance", "q_max must be >= 1");

  long period = 1;
  for (Complex lambda : lambdas) {
    if (std::abs(std::abs(lambda) - 1.0) > tol)
      throw ValidationError("tolerance", "phase does not lie on the unit circle within tol");
    double phase = std::arg(lambda) / (2.0 * M_PI);
    phase -= std::floor(phase);  // into [0, 1)
    auto [num, den] = best_rational(phase, q_max);
    Complex matched = std::exp(Complex(0.0, 2.0 * M_PI * num / den));
    if (std::abs(lambda - matched) >= tol)
      throw SpectralError("irrational_phase",
                          "no rational phase a/b with b <= " + std::to_string(q_max) +
                              " matches within tol; multi-product scheme inapplicable");
    period = std::lcm(period, den);
  }
  return period;
}

}  // namespace mpzeno
