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

struct PeripheralComponent {
  Complex lambda;    // unit-circle eigenvalue
  Matrix projector;  // spectral projector, idempotent within 1e-8
};

// Peripheral spectrum of a power-convergent operator: eigenvalues within
// gap_tol of the unit circle with their spectral projectors, plus the modulus
// bound delta on the remaining spectrum.
struct SpectralSplit {
  std::vector<PeripheralComponent> peripheral;
  double delta = 0.0;
  double c_est = 0.0;  // filled in by power_convergence_fit
};

struct ContourSpec {
  Complex center;
  double radius = 0.0;
  int num_nodes = 64;
};

// Eigendecomposition route: peripheral eigenvalues require |lambda| >= 1-1e-8;
// eigenvalues with |lambda| in (1-gap_tol, 1-1e-8) raise a gap violation.
// Peripheral eigenvalues closer than 2*gap_tol are merged into one projector;
// a nilpotent residual ||(lambda - M)P|| >= 1e-8 raises a defective-periphery
// error. Projectors come from biorthogonal right/left eigenvector pairs.
SpectralSplit peripheral_split(const Matrix& m, double gap_tol = 0.1);
inline SpectralSplit peripheral_split(const Superoperator& m, double gap_tol = 0.1) {
  return peripheral_split(m.matrix, gap_tol);
}

// Holomorphic-calculus route: trapezoidal discretization of
// (1/2 pi i) closed-integral R(z, M) dz over the given circle.
Matrix contour_projection(const Matrix& m, const ContourSpec& contour);

// P(t) = (1/2 pi i) closed-integral R(z, M e^{tL}) dz; a near-singular
// resolvent at a node (spectrum crossing the contour) raises epsilon_exceeded.
Matrix perturbed_projection(const Matrix& m, const Matrix& l, double t, const ContourSpec& contour);

// Default isolating circle around lambda_j: radius
// min((1-delta)/3, min_{i != j} |lambda_i - lambda_j| / 3).
ContourSpec peripheral_contour(const SpectralSplit& split, std::size_t j, int num_nodes = 64);

struct PowerConvergenceFit {
  double c_est = 0.0;
  double delta_emp = 0.0;
  std::vector<std::pair<long, double>> residuals;  // (n, ||M^n - sum lambda^n P||)
};

// Fits ||M^n - sum_j lambda_j^n P_j|| <= c delta^n on the decaying range and
// certifies the bound on that range (within a 1e-6 relative slack). Returns
// the (0, 0) sentinel when every residual sits at the roundoff floor.
PowerConvergenceFit power_convergence_fit(const Matrix& m, const SpectralSplit& split, long n_max);

// Smallest p with lambda_j^p = 1 for all j, matching each phase to a rational
// a/b (b <= q_max) through continued-fraction best approximation. Throws
// irrational_phase when some phase admits no such rational within tol.
long period_of_phases(const std::vector<Complex>& lambdas, double tol = 1e-9, long q_max = 64);

}  // namespace mpzeno
