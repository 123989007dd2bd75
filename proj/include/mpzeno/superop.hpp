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

#include "mpzeno/dense.hpp"

namespace mpzeno {

// Linear map on operators over a d-dimensional Hilbert space, stored as a
// d^2 x d^2 matrix acting on column-stacked d x d matrices.
struct Superoperator {
  Index dim = 0;
  Matrix matrix;
};

// Column stacking: vec(X)(i + d*j) = X(i, j).
Vector vectorize(const Matrix& x);
Matrix devectorize(const Vector& v);

Superoperator superop_identity(Index d);

// Represents X -> A X B; under column stacking the matrix is B^T (x) A.
Superoperator sandwich_superop(const Matrix& a, const Matrix& b);

Matrix apply_superop(const Superoperator& s, const Matrix& x);

// Choi matrix J with J[(i d + m), (j d + n)] = S[(m + d n), (i + d j)],
// i.e. sum_ij |i><j| (x) E(|i><j|) reshuffled from the superoperator matrix.
Matrix choi_matrix(const Superoperator& s);

// || (vec I)' S - (vec I)' ||_2; zero for trace-preserving maps.
double trace_preservation_defect(const Superoperator& s);

double choi_min_eigenvalue(const Superoperator& s);

bool is_channel(const Superoperator& s, double tol = 1e-10);
void validate_channel(const Superoperator& s, double tol = 1e-10);

// Trace over the second factor of a (d1 d2) x (d1 d2) matrix on a
// system-major tensor ordering (index = i_sys * d2 + i_bath).
Matrix partial_trace_second(const Matrix& m, Index d1, Index d2);

// Lower estimate of the trace-norm induced operator norm of a superoperator
// (the natural metric for quantum operations). Samples rank-one inputs u v' and all matrix
// units, then refines the best candidate with a few alternating maximization
// steps. Deterministic for a fixed seed.
double one_to_one_lower_estimate(const Matrix& superop, unsigned seed = 0,
                                 int samples = 200, int refine_steps = 5);

inline double one_to_one_lower_estimate(const Superoperator& s, unsigned seed = 0,
                                        int samples = 200, int refine_steps = 5) {
  return one_to_one_lower_estimate(s.matrix, seed, samples, refine_steps);
}

}  // namespace mpzeno
