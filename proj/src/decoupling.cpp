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

#include "mpzeno/decoupling.hpp"

#include <cmath>

#include "mpzeno/errors.hpp"

namespace mpzeno {

namespace {

void validate_spec(const DecouplingSpec& spec) {
  if (!is_hermitian(spec.h1, 1e-12) || !is_hermitian(spec.h2, 1e-12))
    throw ValidationError("non_hermitian", "H1 and H2 must be Hermitian within 1e-12");
  for (const auto& [sys, bath] : spec.couplings) {
    if (sys.rows() != spec.h1.rows() || sys.cols() != spec.h1.cols() ||
        bath.rows() != spec.h2.rows() || bath.cols() != spec.h2.cols())
      throw ValidationError("dimension", "coupling terms do not match H1/H2 dimensions");
    if (!is_hermitian(sys, 1e-12) || !is_hermitian(bath, 1e-12))
      throw ValidationError("non_hermitian", "coupling terms must be Hermitian within 1e-12");
  }
}

}  // namespace

Matrix decoupling_hamiltonian(const DecouplingSpec& spec) {
  validate_spec(spec);
  const Index d1 = spec.h1.rows(), d2 = spec.h2.rows();
  Matrix h = kron(spec.h1, Matrix::Identity(d2, d2)) + kron(Matrix::Identity(d1, d1), spec.h2);
  for (const auto& [sys, bath] : spec.couplings) h += kron(sys, bath);
  return h;
}

Matrix h_dec(const DecouplingSpec& spec, const Matrix& rho_star) {
  validate_spec(spec);
  if (rho_star.rows() != spec.h2.rows() || rho_star.cols() != spec.h2.cols())
    throw ValidationError("dimension", "rho* must live on the bath space");
  Matrix h = spec.h1;
  for (const auto& [sys, bath] : spec.couplings) h += (bath * rho_star).trace().real() * sys;
  return h;
}

Matrix fixed_point(const Superoperator& m) {
  validate_channel(m);
  Eigen::ComplexEigenSolver<Matrix> es(m.matrix);
  if (es.info() != Eigen::Success)
    throw NumericalError("instability", "eigendecomposition failed in fixed_point");

  constexpr double kWindow = 1e-8;
  Index found = -1;
  int multiplicity = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()[i] - 1.0) < kWindow) {
      ++multiplicity;
      found = i;
    }
  }
  if (multiplicity != 1)
    throw SpectralError("non_ergodic", "eigenvalue-1 multiplicity is " +
                                           std::to_string(multiplicity) +
                                           "; channel has no unique fixed point");

  Matrix rho = devectorize(es.eigenvectors().col(found));
  rho = 0.5 * (rho + rho.adjoint()).eval();
  Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12)
    throw SpectralError("non_ergodic", "fixed-point candidate is traceless");
  rho /= tr;

  Eigen::SelfAdjointEigenSolver<Matrix> ev(rho, Eigen::EigenvaluesOnly);
  if (ev.eigenvalues().minCoeff() < -1e-10)
    throw SpectralError("non_ergodic", "fixed-point candidate is not positive semidefinite");
  if ((apply_superop(m, rho) - rho).norm() > 1e-10)
    throw SpectralError("non_ergodic", "fixed-point residual exceeds 1e-10");
  return rho;
}

}  // namespace mpzeno
