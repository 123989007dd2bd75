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

#include <random>

#include "mpzeno/dense.hpp"
#include "mpzeno/superop.hpp"

namespace mpzeno::test {

inline Matrix random_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline Matrix random_hermitian(Index d, std::mt19937_64& rng) {
  Matrix g = random_complex(d, d, rng);
  return 0.5 * (g + g.adjoint()).eval();
}

inline Matrix random_density(Index d, std::mt19937_64& rng) {
  Matrix g = random_complex(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

// Spectral-norm contraction with ||C|| = scale.
inline Matrix random_contraction(Index d, std::mt19937_64& rng, double scale = 1.0) {
  Matrix g = random_complex(d, d, rng);
  return (scale / spectral_norm(g)) * g;
}

// Random Kraus set (a channel) from the column blocks of a Haar-ish isometry.
inline std::vector<Matrix> random_kraus_set(Index d, int count, std::mt19937_64& rng) {
  Matrix big = random_complex(d * count, d, rng);
  Eigen::HouseholderQR<Matrix> qr(big);
  Matrix q = qr.householderQ() * Matrix::Identity(d * count, d);
  std::vector<Matrix> ops;
  for (int i = 0; i < count; ++i) ops.push_back(q.middleRows(i * d, d));
  return ops;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix ket0_projector() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

}  // namespace mpzeno::test
