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

// Bipartite system-bath model: H = H1 (x) 1 + 1 (x) H2 + sum_j H1j (x) H2j,
// decoupled by frequent applications of (1 (x) bath_channel).
struct DecouplingSpec {
  Matrix h1;
  Matrix h2;
  std::vector<std::pair<Matrix, Matrix>> couplings;  // (system part, bath part)
  Superoperator bath_channel;
};

Matrix decoupling_hamiltonian(const DecouplingSpec& spec);

// H_dec = H1 + sum_j tr[H2j rho*] H1j.
Matrix h_dec(const DecouplingSpec& spec, const Matrix& rho_star);

// Unique fixed state of an ergodic channel; throws when the eigenvalue-1
// cluster has multiplicity != 1 within an absolute window of 1e-8.
Matrix fixed_point(const Superoperator& m);

}  // namespace mpzeno
