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

#include <atomic>
#include <complex>

#include <Eigen/Dense>

namespace mpzeno {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Counters backing the cost-accounting assertions (number of matrix
// exponentials / multiplications spent in the power kernels).
struct OpCounters {
  std::atomic<long> exponentials{0};
  std::atomic<long> multiplications{0};
  void reset() {
    exponentials = 0;
    multiplications = 0;
  }
};
OpCounters& op_counters();

// exp(A) via scaling-and-squaring with a diagonal Pade approximant, squaring
// count chosen from the 1-norm. `tol` is the requested backward-error bound,
// restricted to (0, 1e-6]; the kernel delivers near machine precision.
Matrix mat_exp(const Matrix& a, double tol = 1e-12);

// A^n by binary powering, n >= 0. mat_pow(A, 0) is the identity.
Matrix mat_pow(const Matrix& a, long n);

// Largest singular value, computed from the Hermitian eigenproblem of A'A.
double spectral_norm(const Matrix& a);

// Sum of singular values.
double trace_norm(const Matrix& a);

template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.derived();
  return out;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  return (a.derived() - a.derived().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace mpzeno
