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

#include "mpzeno/fock.hpp"

#include <cmath>

#include "mpzeno/errors.hpp"

namespace mpzeno {

double coherent_truncation_error(double alpha, Index fock_dim) {
  const double mean = alpha * alpha;
  double term = std::exp(-mean);  // Poisson(mean) probability of n = 0
  double mass = 0.0;
  for (Index n = 0; n < fock_dim; ++n) {
    mass += term;
    term *= mean / static_cast<double>(n + 1);
  }
  return std::max(0.0, 1.0 - mass);
}

void validate_cat_spec(const CatCodeSpec& spec) {
  if (spec.fock_dim < 2)
    throw ValidationError("truncation", "fock_dim must be at least 2");
  double tail = coherent_truncation_error(spec.alpha, spec.fock_dim);
  if (tail >= 1e-8)
    throw ValidationError("truncation",
                          "Fock truncation too small: coherent-state norm error " +
                              std::to_string(tail) + " >= 1e-8 (size fock_dim >= 4 alpha^2 + 10)");
}

Matrix annihilation(Index d) {
  if (d < 2) throw ValidationError("dimension", "annihilation needs dimension >= 2");
  Matrix a = Matrix::Zero(d, d);
  for (Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix number_op(Index d) {
  if (d < 2) throw ValidationError("dimension", "number_op needs dimension >= 2");
  Matrix n = Matrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Vector coherent_state(double alpha, Index d) {
  validate_cat_spec({alpha, d});
  Vector state(d);
  double amplitude = std::exp(-alpha * alpha / 2.0);
  for (Index n = 0; n < d; ++n) {
    state[n] = amplitude;
    amplitude *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  state.normalize();
  return state;
}

std::pair<Vector, Vector> cat_states(double alpha, Index d) {
  if (!(alpha > 0.0))
    throw ValidationError("degenerate_cat", "cat states need alpha > 0 (odd normalization vanishes)");
  Vector plus_amp = coherent_state(alpha, d);
  Vector minus_amp = coherent_state(-alpha, d);
  const double overlap = std::exp(-2.0 * alpha * alpha);
  Vector even = (plus_amp + minus_amp) / std::sqrt(2.0 * (1.0 + overlap));
  Vector odd = (plus_amp - minus_amp) / std::sqrt(2.0 * (1.0 - overlap));
  return {even, odd};
}

std::pair<Matrix, Matrix> cat_projectors(double alpha, Index d) {
  auto [even, odd] = cat_states(alpha, d);
  Matrix p = even * even.adjoint() + odd * odd.adjoint();
  Matrix x = even * odd.adjoint() + odd * even.adjoint();
  return {p, x};
}

}  // namespace mpzeno
