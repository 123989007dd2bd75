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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mpzeno/quadrature.hpp"
#include "test_support.hpp"

using namespace mpzeno;

TEST_CASE("order 1 rule is the midpoint") {
  QuadratureRule rule = gauss_legendre(1);
  REQUIRE(rule.order() == 1);
  CHECK(rule.nodes[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rule.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("order 2 rule matches the rescaled standard nodes") {
  QuadratureRule rule = gauss_legendre(2);
  REQUIRE(rule.order() == 2);
  double lo = (1.0 - 1.0 / std::sqrt(3.0)) / 2.0;
  double hi = (1.0 + 1.0 / std::sqrt(3.0)) / 2.0;
  CHECK(rule.nodes[0] == doctest::Approx(lo).epsilon(1e-14));
  CHECK(rule.nodes[1] == doctest::Approx(hi).epsilon(1e-14));
  CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rule.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("rule invariants: nodes interior and increasing, weights sum to 1") {
  for (int order : {1, 2, 3, 5, 8, 16, 32, 64}) {
    QuadratureRule rule = gauss_legendre(order);
    CHECK(std::abs(rule.weights.sum() - 1.0) < 1e-14);
    for (int i = 0; i < order; ++i) {
      CHECK(rule.nodes[i] > 0.0);
      CHECK(rule.nodes[i] < 1.0);
      CHECK(rule.weights[i] > 0.0);
      if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
  }
}

TEST_CASE("order m integrates monomials up to degree 2m - 1") {
  for (int order : {1, 2, 3, 4, 6, 8}) {
    QuadratureRule rule = gauss_legendre(order);
    for (int degree = 0; degree <= 2 * order - 1; ++degree) {
      double sum = 0.0;
      for (int i = 0; i < order; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
      CHECK(std::abs(sum - 1.0 / (degree + 1)) < 1e-13);
    }
  }
}

TEST_CASE("order 3 integrates tau^5 to 1/6") {
  QuadratureRule rule = gauss_legendre(3);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], 5);
  CHECK(std::abs(sum - 1.0 / 6.0) < 1e-14);
}

TEST_CASE("constant matrix integrand returns the matrix") {
  std::mt19937_64 rng(20);
  Matrix b = test::random_complex(3, 3, rng);
  Matrix result = integrate_matrix([&](double) { return b; }, gauss_legendre(4));
  CHECK((result - b).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("linear integrand tau * B") {
  std::mt19937_64 rng(21);
  Matrix b = test::random_complex(2, 4, rng);
  Matrix result = integrate_matrix([&](double tau) -> Matrix { return tau * b; }, gauss_legendre(4));
  CHECK((result - 0.5 * b).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("two-dimensional integrand tau1 tau2^2 B") {
  std::mt19937_64 rng(22);
  Matrix b = test::random_complex(3, 3, rng);
  Matrix result = integrate_matrix2(
      [&](double t1, double t2) -> Matrix { return t1 * t2 * t2 * b; }, gauss_legendre(4));
  CHECK((result - b / 6.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("three-dimensional separable integrand") {
  std::mt19937_64 rng(23);
  Matrix b = test::random_complex(2, 2, rng);
  Matrix result = integrate_matrix3(
      [&](double t1, double t2, double t3) -> Matrix { return t1 * t2 * t3 * b; },
      gauss_legendre(4));
  CHECK((result - b / 8.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("inconsistent integrand dimensions raise") {
  CHECK_THROWS_AS(integrate_matrix(
                      [](double tau) -> Matrix {
                        return tau < 0.5 ? Matrix::Zero(2, 2) : Matrix::Zero(3, 3);
                      },
                      gauss_legendre(8)),
                  ValidationError);
}
