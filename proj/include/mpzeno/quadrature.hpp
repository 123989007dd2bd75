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
#include "mpzeno/errors.hpp"

namespace mpzeno {

// Gauss-Legendre rule mapped to [0,1]: nodes strictly increasing in (0,1),
// positive weights summing to 1, exact on polynomials up to degree 2m-1.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int order() const { return static_cast<int>(nodes.size()); }
};

QuadratureRule gauss_legendre(int order);

namespace detail {

inline void accumulate_sample(Matrix& acc, bool& first, const Matrix& sample, double weight) {
  if (first) {
    acc = weight * sample;
    first = false;
    return;
  }
  if (sample.rows() != acc.rows() || sample.cols() != acc.cols())
    throw ValidationError("dimension", "integrand output dimensions changed across the grid");
  acc.noalias() += weight * sample;
}

}  // namespace detail

// Tensor-product quadrature of matrix-valued integrands over [0,1]^d.

template <class F>
Matrix integrate_matrix(F&& f, const QuadratureRule& rule) {
  Matrix acc;
  bool first = true;
  for (int i = 0; i < rule.order(); ++i)
    detail::accumulate_sample(acc, first, f(rule.nodes[i]), rule.weights[i]);
  return acc;
}

template <class F>
Matrix integrate_matrix2(F&& f, const QuadratureRule& rule) {
  Matrix acc;
  bool first = true;
  for (int i = 0; i < rule.order(); ++i)
    for (int j = 0; j < rule.order(); ++j)
      detail::accumulate_sample(acc, first, f(rule.nodes[i], rule.nodes[j]),
                                rule.weights[i] * rule.weights[j]);
  return acc;
}

template <class F>
Matrix integrate_matrix3(F&& f, const QuadratureRule& rule) {
  Matrix acc;
  bool first = true;
  for (int i = 0; i < rule.order(); ++i)
    for (int j = 0; j < rule.order(); ++j)
      for (int k = 0; k < rule.order(); ++k)
        detail::accumulate_sample(acc, first, f(rule.nodes[i], rule.nodes[j], rule.nodes[k]),
                                  rule.weights[i] * rule.weights[j] * rule.weights[k]);
  return acc;
}

}  // namespace mpzeno
