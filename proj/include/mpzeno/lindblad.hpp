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

#include <vector>

#include "mpzeno/superop.hpp"

namespace mpzeno {

struct LindbladSpec {
  Matrix hamiltonian;                             // Hermitian, hbar = 1
  std::vector<std::pair<Matrix, double>> jumps;   // (operator, rate >= 0)
};

// L = -i (I (x) H - H^T (x) I), the generator of conjugation by e^{-itH}.
Superoperator hamiltonian_generator(const Matrix& h);

// GKLS form: L(rho) = -i[H, rho] + sum_k gamma_k (V rho V' - {V'V, rho}/2).
Superoperator lindblad_generator(const LindbladSpec& spec);

// sum_i K_i . K_i' as a superoperator; requires sum K_i'K_i <= I + 1e-10.
Superoperator kraus_channel(const std::vector<Matrix>& ops);

// P . P for a Hermitian idempotent P.
Superoperator projector_channel(const Matrix& p);

}  // namespace mpzeno
