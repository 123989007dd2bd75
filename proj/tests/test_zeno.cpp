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

#include "mpzeno/errors.hpp"
#include "mpzeno/fitting.hpp"
#include "mpzeno/fock.hpp"
#include "mpzeno/lindblad.hpp"
#include "mpzeno/zeno.hpp"
#include "test_support.hpp"

using namespace mpzeno;

namespace {

ZenoStep frozen_qubit(double t = 1.0) {
  return make_zeno_step(projector_channel(test::ket0_projector()),
                        hamiltonian_generator(test::pauli_x()), t);
}

EffectiveDynamics frozen_qubit_dynamics(const ZenoStep& step) {
  SpectralSplit split = peripheral_split(step.kick);
  return effective_dynamics(split, step.generator.matrix);
}

double survival_probability(const Superoperator& product) {
  Matrix out = apply_superop(product, test::ket0_projector());
  return out(0, 0).real();
}

}  // namespace

TEST_CASE("zeno_product with L = 0 is the plain power") {
  Matrix k0 = test::ket0_projector();
  Matrix k1 = Matrix::Identity(2, 2) - k0;
  Superoperator pinch = kraus_channel({k0, k1});
  ZenoStep step = make_zeno_step(pinch, Superoperator{2, Matrix::Zero(4, 4)}, 1.0);
  for (long n : {1L, 2L, 9L}) {
    CHECK((zeno_product(step, n).matrix - mat_pow(pinch.matrix, n)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("zeno_product with identity kick is the semigroup") {
  Matrix sigma_minus = Matrix::Zero(2, 2);
  sigma_minus(0, 1) = 1.0;
  Superoperator lind = lindblad_generator({0.4 * test::pauli_z(), {{sigma_minus, 0.8}}});
  ZenoStep step = make_zeno_step(superop_identity(2), lind, 1.3);
  Matrix semigroup = mat_exp(1.3 * lind.matrix);
  for (long n : {1L, 5L, 32L}) {
    CHECK(spectral_norm(zeno_product(step, n).matrix - semigroup) < 1e-10);
  }
}

TEST_CASE("frozen qubit survival probability is cos^{2n}(t/n)") {
  ZenoStep step = frozen_qubit(1.0);
  for (long n : {1L, 2L, 3L, 7L, 16L, 64L, 256L}) {
    double expected = std::pow(std::cos(1.0 / n), 2.0 * n);
    CHECK(std::abs(survival_probability(zeno_product(step, n)) - expected) < 1e-12);
  }
}

TEST_CASE("zeno products of channels stay contractive") {
  Matrix sigma_minus = Matrix::Zero(2, 2);
  sigma_minus(0, 1) = 1.0;
  Superoperator lind = lindblad_generator({test::pauli_x(), {{sigma_minus, 0.5}}});
  Matrix k0 = test::ket0_projector();
  Matrix k1 = Matrix::Identity(2, 2) - k0;
  ZenoStep step = make_zeno_step(kraus_channel({k0, k1}), lind, 1.0);
  CHECK(one_to_one_lower_estimate(zeno_product(step, 16)) <= 1.0 + 1e-8);
}

TEST_CASE("instability guard fires on blowing-up kicks") {
  Superoperator blowup = superop_identity(2);
  blowup.matrix *= 1.5;
  ZenoStep step{blowup, Superoperator{2, Matrix::Zero(4, 4)}, 1.0};  // bypasses the factory
  CHECK_THROWS_AS(zeno_product(step, 8), NumericalError);
}

TEST_CASE("make_zeno_step validates the kick") {
  Superoperator blowup = superop_identity(2);
  blowup.matrix *= 1.5;
  CHECK_THROWS_AS(make_zeno_step(blowup, Superoperator{2, Matrix::Zero(4, 4)}, 1.0),
                  ValidationError);
}

TEST_CASE("symmetric product plus boundary term reproduces the asymmetric product") {
  ZenoStep step = frozen_qubit(1.0);
  long n = 16;
  Matrix p = step.kick.matrix;
  Matrix complement = Matrix::Identity(4, 4) - p;
  Matrix stride = mat_exp((step.time / n) * step.generator.matrix);
  Matrix asym = mat_pow((p * stride).eval(), n);
  Matrix sym_factor = p * stride * p;
  Matrix reconstructed = mat_pow(sym_factor, n) + mat_pow(sym_factor, n - 1) * p * stride * complement;
  CHECK((asym - reconstructed).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("effective limit trivial cases") {
  std::mt19937_64 rng(60);
  SUBCASE("single term with identity projector is exp(tL)") {
    SpectralSplit split = peripheral_split(superop_identity(2));
    Matrix l = hamiltonian_generator(test::random_hermitian(2, rng)).matrix;
    EffectiveDynamics dyn = effective_dynamics(split, l);
    CHECK(spectral_norm(effective_limit(dyn, 0.8, 5) - mat_exp(0.8 * l)) < 1e-12);
  }
  SUBCASE("t = 0 leaves the phase-weighted projector sum") {
    Superoperator chan = projector_channel(test::ket0_projector());
    SpectralSplit split = peripheral_split(chan);
    EffectiveDynamics dyn = effective_dynamics(split, Matrix::Zero(4, 4));
    Matrix value = effective_limit(dyn, 0.0, 3);
    Matrix expected = Matrix::Zero(4, 4);
    for (const auto& term : dyn.terms) expected += std::pow(term.lambda, 3) * term.projector;
    CHECK((value - expected).norm() < 1e-12);
  }
  SUBCASE("frozen qubit has vanishing effective generator") {
    ZenoStep step = frozen_qubit();
    EffectiveDynamics dyn = frozen_qubit_dynamics(step);
    REQUIRE(dyn.terms.size() == 1);
    CHECK(spectral_norm(dyn.terms[0].generator) < 1e-12);
    Matrix limit = effective_limit(dyn, 1.0, 64);
    CHECK((limit - dyn.terms[0].projector).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("zeno_error: exact cases and the first-order decay") {
  SUBCASE("L = 0 with an exact split") {
    Superoperator chan = projector_channel(test::ket0_projector());
    SpectralSplit split = peripheral_split(chan);
    ZenoStep step = make_zeno_step(chan, Superoperator{2, Matrix::Zero(4, 4)}, 1.0);
    EffectiveDynamics dyn = effective_dynamics(split, Matrix::Zero(4, 4));
    for (long n : {1L, 4L, 64L}) CHECK(zeno_error(step, dyn, n) < 1e-12);
  }

  SUBCASE("frozen qubit decays like 1/n") {
    ZenoStep step = frozen_qubit();
    EffectiveDynamics dyn = frozen_qubit_dynamics(step);
    std::vector<double> xs, ys;
    double previous = 1e300;
    for (long n = 8; n <= 256; n *= 2) {
      double error = zeno_error(step, dyn, n);
      CHECK(error < previous);  // monotone decrease on this scenario
      previous = error;
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(error));
    }
    double slope = linear_fit(xs, ys).slope;
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.15));
  }
}

TEST_CASE("doubling n halves the error at first order (small cat)") {
  Index d = 16;
  auto [cat_p, cat_x] = cat_projectors(1.0, d);
  Matrix a = annihilation(d);
  ZenoStep step = make_zeno_step(projector_channel(cat_p),
                                 hamiltonian_generator((a + a.adjoint()).eval()), 0.4);
  EffectiveDynamics dyn = effective_dynamics(peripheral_split(step.kick), step.generator.matrix);
  double e64 = zeno_error(step, dyn, 64);
  double e128 = zeno_error(step, dyn, 128);
  CHECK(std::abs(e64 / e128 - 2.0) < 0.4);  // halving within 20%
}

TEST_CASE("first_order_term vanishes for block-diagonal generators") {
  // L commuting with P and PL(1-P) = 0: both corrections vanish.
  Matrix p = projector_channel(test::ket0_projector()).matrix;
  Matrix l = hamiltonian_generator(test::pauli_z()).matrix;
  CHECK((l * p - p * l).cwiseAbs().maxCoeff() < 1e-14);
  Matrix e1 = first_order_term(p, l, 1.0, gauss_legendre(16));
  CHECK(e1.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("first_order_term matches the scaled-error limit and is quad-stable") {
  ZenoStep step = frozen_qubit(1.0);
  EffectiveDynamics dyn = frozen_qubit_dynamics(step);
  EffectiveLimitCache cache = effective_exponentials(dyn, 1.0);

  Matrix e1 = first_order_term(step.kick.matrix, step.generator.matrix, 1.0, gauss_legendre(32));
  long n = 512;
  Matrix scaled = static_cast<double>(n) * (zeno_product(step, n).matrix - effective_limit(cache, n));
  CHECK(spectral_norm(scaled - e1) < 0.05 * spectral_norm(e1));

  Matrix e1_coarse = first_order_term(step.kick.matrix, step.generator.matrix, 1.0,
                                      gauss_legendre(16));
  CHECK(spectral_norm(e1 - e1_coarse) < 1e-9);

  CHECK_THROWS_AS(first_order_term(step.generator.matrix, step.generator.matrix, 1.0,
                                   gauss_legendre(16)),
                  ValidationError);
}

TEST_CASE("second_order_bound") {
  Matrix p = projector_channel(test::ket0_projector()).matrix;
  SUBCASE("L = 0 gives the bare constant 1/2") {
    CHECK(second_order_bound(p, Matrix::Zero(4, 4), 1.0) == doctest::Approx(0.5));
  }
  SUBCASE("monotone nondecreasing in t") {
    Matrix l = hamiltonian_generator(test::pauli_x()).matrix;
    double previous = 0.0;
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      double bound = second_order_bound(p, l, t);
      CHECK(bound >= previous);
      previous = bound;
    }
  }
  SUBCASE("remainder after removing E1 obeys the bound (frozen qubit)") {
    for (double t : {0.5, 1.0}) {
      ZenoStep step = frozen_qubit(t);
      EffectiveDynamics dyn = frozen_qubit_dynamics(step);
      EffectiveLimitCache cache = effective_exponentials(dyn, t);
      Matrix e1 = first_order_term(step.kick.matrix, step.generator.matrix, t, gauss_legendre(32));
      double constant = second_order_bound(step.kick.matrix, step.generator.matrix, t);
      for (long n = 8; n <= 256; n *= 2) {
        Matrix remainder =
            zeno_product(step, n).matrix - effective_limit(cache, n) - e1 / static_cast<double>(n);
        double measured = one_to_one_lower_estimate(remainder);
        CHECK(measured <= constant / static_cast<double>(n * n));
      }
    }
  }
}

TEST_CASE("richardson_fit recovers an exactly linear model") {
  std::mt19937_64 rng(61);
  Matrix limit = test::random_complex(3, 3, rng);
  Matrix b = test::random_complex(3, 3, rng);
  auto error_at = [&](long n) -> Matrix { return b / static_cast<double>(n); };
  RichardsonResult result = richardson_fit({4, 8, 16, 32, 64}, 2, error_at);
  CHECK(spectral_norm(result.terms[0] - b) < 1e-10);
  CHECK(spectral_norm(result.terms[1]) < 1e-9);
  (void)limit;
}

TEST_CASE("richardson_fit rejects degenerate designs") {
  auto error_at = [](long n) -> Matrix { return Matrix::Zero(2, 2) * static_cast<double>(n); };
  CHECK_THROWS_AS(richardson_fit({8, 8, 16, 32}, 1, error_at), ValidationError);
  CHECK_THROWS_AS(richardson_fit({8, 16}, 1, error_at), ValidationError);
  // Nearly coincident points push the scaled design past the condition guard.
  CHECK_THROWS_AS(richardson_fit({1000, 1001, 1002, 1003, 1004, 1005, 1006, 1007}, 6, error_at),
                  NumericalError);
}

TEST_CASE("richardson E1 estimate matches the explicit formula (sign convention)") {
  ZenoStep step = frozen_qubit(1.0);
  EffectiveDynamics dyn = frozen_qubit_dynamics(step);
  RichardsonResult fit = richardson_extract(step, dyn, {16, 32, 64, 128, 256, 512}, 3);
  Matrix e1 = first_order_term(step.kick.matrix, step.generator.matrix, 1.0, gauss_legendre(32));
  double scale = spectral_norm(e1);
  CHECK(spectral_norm(fit.terms[0] - e1) < 0.05 * scale);
  // The opposite sign convention is far away: the measurement is decisive.
  CHECK(spectral_norm(fit.terms[0] + e1) > 0.5 * scale);
}

TEST_CASE("richardson remainder on the cat-code scenario decays at third order") {
  Index d = 25;
  auto [cat_p, cat_x] = cat_projectors(2.0, d);
  Matrix a = annihilation(d);
  ZenoStep step = make_zeno_step(projector_channel(cat_p),
                                 hamiltonian_generator((a + a.adjoint()).eval()), 0.196);
  EffectiveDynamics dyn = effective_dynamics(peripheral_split(step.kick), step.generator.matrix);
  RichardsonResult fit = richardson_extract(step, dyn, {8, 16, 32, 64, 128}, 2);
  CHECK(fit.residual_slope <= -2.7);
}

TEST_CASE("chernoff residual") {
  QuadratureRule quad = gauss_legendre(32);

  SUBCASE("identity is exactly zero") {
    CHECK(chernoff_residual(Matrix::Identity(3, 3), 8, quad) == 0.0);
  }

  SUBCASE("diagonal contraction") {
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = 1.0;
    c(1, 1) = 0.5;
    CHECK(chernoff_residual(c, 8, quad) < 1e-8);
  }

  SUBCASE("random contractions, improving with quadrature order") {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 3; ++trial) {
      Matrix c = test::random_contraction(3, rng);
      double coarse = chernoff_residual(c, 16, quad);
      CHECK(coarse < 1e-6);
      double fine = chernoff_residual(c, 16, gauss_legendre(64));
      CHECK(fine <= std::max(coarse, 1e-10));
    }
  }

  SUBCASE("visible 4x shrink per order doubling away from the floor") {
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = 1.0;
    c(1, 1) = 0.5;
    long n = 150;  // scale n||C - I|| large enough that order 32 is not converged
    double r32 = chernoff_residual(c, n, gauss_legendre(32));
    double r64 = chernoff_residual(c, n, gauss_legendre(64));
    double r128 = chernoff_residual(c, n, gauss_legendre(128));
    CHECK(r64 <= std::max(r32 / 4.0, 1e-10));
    CHECK(r128 <= std::max(r64 / 4.0, 1e-10));
  }

  SUBCASE("rejects non-contractions") {
    CHECK_THROWS_AS(chernoff_residual(2.0 * Matrix::Identity(2, 2), 4, quad), ValidationError);
  }
}

TEST_CASE("dunford-segal residual") {
  QuadratureRule quad = gauss_legendre(16);
  Matrix p = projector_channel(test::ket0_projector()).matrix;
  Matrix l = hamiltonian_generator(test::pauli_x()).matrix;

  SUBCASE("L = 0 is exactly zero") {
    CHECK(dunford_segal_residual(p, Matrix::Zero(4, 4), 0.5, 0.5, 0.5, quad) == 0.0);
  }

  SUBCASE("qubit example, s1 = s2 and the full identity") {
    CHECK(dunford_segal_residual(p, l, 0.5, 0.25, 0.25, quad) < 1e-6);
    CHECK(dunford_segal_residual(p, l, 0.25, 0.25, 0.25, quad) < 1e-6);
    CHECK(dunford_segal_residual(p, l, 0.25, 0.2, 0.4, quad) < 1e-6);
  }

  SUBCASE("visible 4x shrink per order doubling away from the floor") {
    double r16 = dunford_segal_residual(p, l, 1.0, 0.05, 0.25, gauss_legendre(16));
    double r32 = dunford_segal_residual(p, l, 1.0, 0.05, 0.25, gauss_legendre(32));
    double r64 = dunford_segal_residual(p, l, 1.0, 0.05, 0.25, gauss_legendre(64));
    CHECK(r32 <= std::max(r16 / 4.0, 1e-10));
    CHECK(r64 <= std::max(r32 / 4.0, 1e-10));
  }

  SUBCASE("rejects out-of-range arguments") {
    CHECK_THROWS_AS(dunford_segal_residual(p, l, 0.0, 0.5, 0.5, quad), ValidationError);
    CHECK_THROWS_AS(dunford_segal_residual(p, l, 0.5, 0.5, 1.5, quad), ValidationError);
  }
}
