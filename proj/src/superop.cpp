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

#include "mpzeno/superop.hpp"

#include <cmath>
#include <random>

#include "mpzeno/errors.hpp"

namespace mpzeno {

namespace {

Index isqrt_exact(Index n, const char* context) {
  auto root = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (root * root != n)
    throw ValidationError("dimension", std::string(context) + ": length is not a perfect square");
  return root;
}

}  // namespace

Vector vectorize(const Matrix& x) {
  if (x.rows() != x.cols())
    throw ValidationError("dimension", "vectorize needs a square matrix");
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix devectorize(const Vector& v) {
  Index d = isqrt_exact(v.size(), "devectorize");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Superoperator superop_identity(Index d) {
  return {d, Matrix::Identity(d * d, d * d)};
}

Superoperator sandwich_superop(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw ValidationError("dimension", "sandwich_superop needs square matrices of equal size");
  return {a.rows(), kron(b.transpose(), a)};
}

Matrix apply_superop(const Superoperator& s, const Matrix& x) {
  if (x.rows() != s.dim || x.cols() != s.dim)
    throw ValidationError("dimension", "apply: operand does not match superoperator dimension");
  return devectorize(s.matrix * vectorize(x));
}

Matrix choi_matrix(const Superoperator& s) {
  const Index d = s.dim;
  Matrix choi(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n)
          choi(i * d + m, j * d + n) = s.matrix(m + d * n, i + d * j);
  return choi;
}

double trace_preservation_defect(const Superoperator& s) {
  Vector vec_id = vectorize(Matrix::Identity(s.dim, s.dim));
  return (s.matrix.adjoint() * vec_id - vec_id).norm();
}

double choi_min_eigenvalue(const Superoperator& s) {
  Matrix choi = choi_matrix(s);
  // Hermiticity-preserving maps give a Hermitian Choi matrix up to roundoff.
  Matrix sym = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_channel(const Superoperator& s, double tol) {
  if (s.matrix.rows() != s.dim * s.dim || s.matrix.cols() != s.dim * s.dim) return false;
  return trace_preservation_defect(s) < tol && choi_min_eigenvalue(s) > -tol;
}

void validate_channel(const Superoperator& s, double tol) {
  if (s.matrix.rows() != s.dim * s.dim || s.matrix.cols() != s.dim * s.dim)
    throw ValidationError("dimension", "superoperator matrix is not d^2 x d^2");
  if (trace_preservation_defect(s) >= tol)
    throw ValidationError("not_channel", "superoperator is not trace preserving");
  if (choi_min_eigenvalue(s) <= -tol)
    throw ValidationError("not_channel", "Choi matrix is not positive semidefinite");
}

Matrix partial_trace_second(const Matrix& m, Index d1, Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
    throw ValidationError("dimension", "partial_trace_second: matrix is not (d1 d2) x (d1 d2)");
  Matrix out = Matrix::Zero(d1, d1);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j)
      for (Index b = 0; b < d2; ++b) out(i, j) += m(i * d2 + b, j * d2 + b);
  return out;
}

namespace {

// One alternating maximization step for the 1->1 norm: polar-dual the output,
// pull back through the adjoint map, restart from its top singular pair.
std::pair<double, Matrix> polish_candidate(const Matrix& superop, const Matrix& x) {
  Matrix y = devectorize(superop * vectorize(x));
  Eigen::JacobiSVD<Matrix> svd_y(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double value = svd_y.singularValues().sum();
  Matrix dual = svd_y.matrixU() * svd_y.matrixV().adjoint();
  Matrix pullback = devectorize(superop.adjoint() * vectorize(dual));
  Eigen::JacobiSVD<Matrix> svd_w(pullback, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix next = svd_w.matrixU().col(0) * svd_w.matrixV().col(0).adjoint();
  return {value, next};
}

}  // namespace

double one_to_one_lower_estimate(const Matrix& superop, unsigned seed, int samples,
                                 int refine_steps) {
  if (superop.rows() != superop.cols())
    throw ValidationError("dimension", "one_to_one_lower_estimate needs a square matrix");
  const Index d = isqrt_exact(superop.rows(), "one_to_one_lower_estimate");

  double best = 0.0;
  Matrix best_x = Matrix::Zero(d, d);

  auto consider = [&](const Matrix& x) {
    double value = trace_norm(devectorize(superop * vectorize(x)));
    if (value > best) {
      best = value;
      best_x = x;
    }
  };

  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      consider(unit);
    }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < samples; ++k) {
    Vector u(d), v(d);
    for (Index i = 0; i < d; ++i) {
      u[i] = Complex(gauss(rng), gauss(rng));
      v[i] = Complex(gauss(rng), gauss(rng));
    }
    u.normalize();
    v.normalize();
    consider(u * v.adjoint());
  }

  Matrix x = best_x;
  for (int step = 0; step < refine_steps; ++step) {
    auto [value, next] = polish_candidate(superop, x);
    best = std::max(best, value);
    x = next;
  }
  best = std::max(best, trace_norm(devectorize(superop * vectorize(x))));
  return best;
}

}  // namespace mpzeno
