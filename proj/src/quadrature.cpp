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

#include "mpzeno/quadrature.hpp"

#include <cmath>

namespace mpzeno {

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw ValidationError("tolerance", "quadrature order must be >= 1");
  const int n = order;
  Eigen::VectorXd x(n), w(n);

  // Newton iteration on the Legendre polynomial P_n over [-1,1]; the roots
  // come out pairwise symmetric, so only half of them are solved for.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    double weight = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = weight;
    w[n - 1 - i] = weight;
  }

  QuadratureRule rule;
  rule.nodes = (x.array() + 1.0) / 2.0;
  rule.weights = w / 2.0;
  return rule;
}

}  // namespace mpzeno
