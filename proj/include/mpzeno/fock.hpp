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

#include <utility>

#include "mpzeno/dense.hpp"

namespace mpzeno {

struct CatCodeSpec {
  double alpha = 0.0;   // real coherent amplitude
  Index fock_dim = 0;   // truncation dimension
};

// Norm-squared weight of the coherent state beyond the truncation (the
// Poisson |alpha|^2 tail). The truncation is admissible when this is < 1e-8;
// fock_dim >= 4 alpha^2 + 10 is a sufficient sizing rule of thumb.
double coherent_truncation_error(double alpha, Index fock_dim);
void validate_cat_spec(const CatCodeSpec& spec);

// Truncated ladder operators: a[n-1, n] = sqrt(n), N = a'a = diag(0..d-1).
Matrix annihilation(Index d);
Matrix number_op(Index d);

// Normalized truncation of e^{-|alpha|^2/2} sum_n alpha^n/sqrt(n!) |n>.
Vector coherent_state(double alpha, Index d);

// Even/odd coherent superpositions (|alpha> +- |-alpha>) with the textbook
// normalizations 1/sqrt(2(1 +- e^{-2 alpha^2})). alpha must be positive.
std::pair<Vector, Vector> cat_states(double alpha, Index d);

// P = |+><+| + |-><-| (rank-2 code-space projector) and the code-space flip
// X = |+><-| + |-><+|, satisfying X^2 = P and P X P = X.
std::pair<Matrix, Matrix> cat_projectors(double alpha, Index d);

}  // namespace mpzeno
