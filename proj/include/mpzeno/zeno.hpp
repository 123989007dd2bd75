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

#include "mpzeno/quadrature.hpp"
#include "mpzeno/spectral.hpp"
#include "mpzeno/superop.hpp"

namespace mpzeno {

enum class NormKind { spectral, one_to_one_lower };

double superop_norm(const Matrix& a, NormKind kind, unsigned seed = 0);

// One Zeno iteration datum: kick M, generator L, total evolution time t.
struct ZenoStep {
  Superoperator kick;
  Superoperator generator;
  double time = 1.0;
};

// Validates dimensions and the kick's contraction estimate (1->1 <= 1 + 1e-8).
ZenoStep make_zeno_step(Superoperator kick, Superoperator generator, double time);

// (M e^{(t/n) L})^n with one matrix exponential and binary powering.
Superoperator zeno_product(const ZenoStep& step, long n);

struct EffectiveTerm {
  Complex lambda;
  Matrix projector;
  Matrix generator;  // G_j = P_j L P_j
};

struct EffectiveDynamics {
  std::vector<EffectiveTerm> terms;
};

EffectiveDynamics effective_dynamics(const SpectralSplit& split, const Matrix& l);

// n-independent pieces e^{t G_j} P_j of the limit, reusable across a sweep.
struct EffectiveLimitCache {
  std::vector<Complex> lambdas;
  std::vector<Matrix> exp_projected;
};
EffectiveLimitCache effective_exponentials(const EffectiveDynamics& dyn, double t);

// sum_j lambda_j^n e^{t G_j} P_j.
Matrix effective_limit(const EffectiveLimitCache& cache, long n);
Matrix effective_limit(const EffectiveDynamics& dyn, double t, long n);

double zeno_error(const ZenoStep& step, const EffectiveDynamics& dyn, long n,
                  NormKind kind = NormKind::spectral, unsigned seed = 0);

// Explicit first-order correction, in the convention that makes
// || Zeno - limit - E1/n || = O(1/n^2):
//   E1(t) = (t^2/2) int_0^1 e^{tau t PLP} PL[L,P]P e^{(1-tau) t PLP} dtau
//           + t e^{t PLP} PL(1-P),
// with the evolution time absorbed uniformly into both exponential factors.
Matrix first_order_term(const Matrix& p_superop, const Matrix& l, double t,
                        const QuadratureRule& quad);

// The constant in the second-order remainder bound
// (1/2)(1 + 2 t^2 ||PL^2|| + t ||LP|| (4 + t ||LP||))^2, per unit 1/n^2.
double second_order_bound(const Matrix& p_superop, const Matrix& l, double t,
                          NormKind kind = NormKind::spectral, unsigned seed = 0);

struct RichardsonResult {
  std::vector<Matrix> terms;                       // estimates of E_1..E_K
  std::vector<std::pair<long, double>> residuals;  // (n, remainder norm)
  double residual_slope = 0.0;                     // log-log slope of the remainder
  double condition = 0.0;                          // of the scaled design matrix
};

// Entrywise least-squares fit error(n) ~ sum_{k=1..K} E_k / n^k on a shared
// Vandermonde design in 1/n with column scaling.
RichardsonResult richardson_fit(const std::vector<long>& n_list, int k_order,
                                const std::function<Matrix(long)>& error_at);

RichardsonResult richardson_extract(const ZenoStep& step, const EffectiveDynamics& dyn,
                                    const std::vector<long>& n_list, int k_order);

// Residual of the integral identity
//   C^n - e^{n(C-1)} = -n (C-1)^2 int_0^1 tau C_tau^{n-1} e^{(1-tau) n(C-1)} dtau
// for a contraction C, with C_tau = (1-tau) 1 + tau C.
double chernoff_residual(const Matrix& c, long n, const QuadratureRule& quad);

// Residual of the triple-integral identity for C(s) = P e^{sL} P around
// e^{(t/s1)(C(s2)-P)} - e^{t C'(0)}, evaluated on the range of P.
double dunford_segal_residual(const Matrix& p_superop, const Matrix& l, double t, double s1,
                              double s2, const QuadratureRule& quad);

}  // namespace mpzeno
