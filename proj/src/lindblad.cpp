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

#include "mpzeno/lindblad.hpp"

#include "mpzeno/errors.hpp"

namespace mpzeno {

namespace {
const Complex kImag(0.0, 1.0);
}

Superoperator hamiltonian_generator(const Matrix& h) {
  if (!is_hermitian(h, 1e-12))
    throw ValidationError("non_hermitian", "Hamiltonian is not Hermitian within 1e-12");
  const Index d = h.rows();
  Matrix id = Matrix::Identity(d, d);
  Matrix gen = -kImag * (kron(id, h) - kron(h.transpose(), id));
  return {d, std::move(gen)};
}

Superoperator lindblad_generator(const LindbladSpec& spec) {
  Superoperator gen = hamiltonian_generator(spec.hamiltonian);
  const Index d = gen.dim;
  Matrix id = Matrix::Identity(d, d);
  for (const auto& [op, rate] : spec.jumps) {
    if (op.rows() != d || op.cols() != d)
      throw ValidationError("dimension", "jump operator does not match Hamiltonian dimension");
    if (rate < 0.0)
      throw ValidationError("negative_rate", "jump rates must be non-negative");
    Matrix opdag_op = op.adjoint() * op;
    gen.matrix += rate * (kron(op.conjugate(), op) - 0.5 * kron(id, opdag_op) -
                          0.5 * kron(opdag_op.transpose(), id));
  }
  return gen;
}

Superoperator kraus_channel(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw ValidationError("dimension", "kraus_channel needs at least one operator");
  const Index d = ops.front().rows();
  Matrix completeness = Matrix::Zero(d, d);
  Matrix superop = Matrix::Zero(d * d, d * d);
  for (const Matrix& k : ops) {
    if (k.rows() != d || k.cols() != d)
      throw ValidationError("dimension", "Kraus operators must be square and equally sized");
    completeness += k.adjoint() * k;
    superop += kron(k.conjugate(), k);
  }
  // Quantum operation: trace non-increasing, sum K'K <= I within tolerance.
  Eigen::SelfAdjointEigenSolver<Matrix> es(completeness, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().maxCoeff() > 1.0 + 1e-10)
    throw ValidationError("kraus_completeness", "sum K'K exceeds the identity");
  return {d, std::move(superop)};
}

Superoperator projector_channel(const Matrix& p) {
  if (p.rows() != p.cols())
    throw ValidationError("dimension", "projector_channel needs a square matrix");
  if (!is_hermitian(p, 1e-10))
    throw ValidationError("non_projection", "P is not Hermitian within 1e-10");
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("non_projection", "P is not idempotent within 1e-10");
  return sandwich_superop(p, p);
}

}  // namespace mpzeno
