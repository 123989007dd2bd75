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

#include "mpzeno/dense.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "mpzeno/errors.hpp"

namespace mpzeno {

OpCounters& op_counters() {
  static OpCounters counters;
  return counters;
}

Matrix mat_exp(const Matrix& a, double tol) {
  if (a.rows() != a.cols())
    throw ValidationError("dimension", "mat_exp needs a square matrix");
  if (!(tol > 0.0) || tol > 1e-6)
    throw ValidationError("tolerance", "mat_exp tolerance must lie in (0, 1e-6]");
  op_counters().exponentials.fetch_add(1, std::memory_order_relaxed);
  return a.exp();
}

Matrix mat_pow(const Matrix& a, long n) {
  if (a.rows() != a.cols())
    throw ValidationError("dimension", "mat_pow needs a square matrix");
  if (n < 0) throw ValidationError("dimension", "mat_pow exponent must be non-negative");
  Matrix result = Matrix::Identity(a.rows(), a.cols());
  if (n == 0) return result;
  Matrix base = a;
  bool result_is_identity = true;
  auto& counters = op_counters();
  while (n > 0) {
    if (n & 1) {
      if (result_is_identity) {
        result = base;
        result_is_identity = false;
      } else {
        result = (result * base).eval();
        counters.multiplications.fetch_add(1, std::memory_order_relaxed);
      }
    }
    n >>= 1;
    if (n > 0) {
      base = (base * base).eval();
      counters.multiplications.fetch_add(1, std::memory_order_relaxed);
    }
  }
  return result;
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  // sigma_max(A) = sqrt(lambda_max(A'A)); only the top of the spectrum is
  // used, so the squared conditioning does not hurt.
  Matrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double trace_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

}  // namespace mpzeno
