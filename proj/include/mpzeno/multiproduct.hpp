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

#include <functional>
#include <vector>

#include "mpzeno/rational.hpp"
#include "mpzeno/zeno.hpp"

namespace mpzeno {

// Extrapolation weights c solving the K+1 conditions sum_l c_l / l^k = [k=0]
// for k = 0..K, which cancel the error terms E_1..E_K while keeping the
// zeroth order. Solved in exact rational arithmetic and cross-checked against
// the closed form c_l = (-1)^{K+1-l} l^{K+1} / (l! (K+1-l)!).
std::vector<Rational> vandermonde_coeffs_exact(int k_order);
std::vector<double> vandermonde_coeffs(int k_order);

struct MPFScheme {
  int k_order = 0;
  std::vector<double> coeffs;  // c_1..c_{K+1}
  long period = 1;             // p with lambda_j^p = 1 for all peripheral phases
  long base_n = 1;
};

MPFScheme build_scheme(int k_order, const std::vector<Complex>& phases, long q_max = 64,
                       long base_n = 1, double phase_tol = 1e-9);

// sum_l c_l product_at(l p n); the seam that mpf_evaluate instantiates with
// Zeno products and synthetic error models instantiate directly.
Matrix mpf_combine(const MPFScheme& scheme, long n, const std::function<Matrix(long)>& product_at);

// sum_l c_l (M e^{(t / (l p n)) L})^{l p n}: K+1 independent exponentials.
Superoperator mpf_evaluate(const ZenoStep& step, const MPFScheme& scheme, long n);

struct MpfErrorReport {
  double error = 0.0;         // against sum_j e^{t G_j} P_j   (order convention)
  double error_lambda = 0.0;  // against sum_j lambda_j e^{t G_j} P_j
  bool order_convention_consistent = true;
};

// Error of the multi-product value against both limit conventions; `error`
// carries the order-convention distance used everywhere by default.
MpfErrorReport mpf_error_report(const ZenoStep& step, const MPFScheme& scheme,
                                const EffectiveDynamics& dyn, long n,
                                NormKind kind = NormKind::spectral, unsigned seed = 0);
double mpf_error(const ZenoStep& step, const MPFScheme& scheme, const EffectiveDynamics& dyn,
                 long n, NormKind kind = NormKind::spectral);

struct ConvergenceReport {
  std::vector<std::pair<long, double>> points;    // used by the fit
  std::vector<std::pair<long, double>> excluded;  // below the numerical floor
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Log-log slope of error vs n; points at or below `floor` are excluded and
// reported, and fewer than 4 usable points raise insufficient_data.
ConvergenceReport fit_order(const std::vector<std::pair<long, double>>& points,
                            double floor = 1e-14);

}  // namespace mpzeno
