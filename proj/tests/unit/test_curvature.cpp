// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logsob/curvature.hpp"
#include "support.hpp"

using namespace logsob;
using logsob::testing::TestRng;

namespace {

// 2 rho_-(Hess V) + psi_a along the ray sqrt(t) e_1 for the arctan family,
// written out from the closed forms of V and u = (eps/2) arctan(t).
double objective_oracle(int dim, double eps, double beta, bool double_well, double t) {
  const double d = dim, q = 1 + t * t;
  const double lap_over_a = (eps * (d + (d - 4) * t * t) + eps * eps * t) / (q * q);
  const double grad_u2 = eps * eps * t / (q * q);
  const double radial_force = double_well ? t - beta : t;  // grad V = radial_force * x
  const double v_dot_u = radial_force * eps * t / q;
  const double psi = lap_over_a - 2 * grad_u2 - v_dot_u;
  const double rho = dim == 1 ? 3 * t - beta : t - beta;
  return 2 * rho + psi;
}

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("radial objective matches the closed-form oracle") {
    TestRng rng(41);
    for (int k = 0; k < 200; ++k) {
      const int d = rng.integer(1, 6);
      const double eps = rng.uniform(0.05, 1.5);
      const double t = std::exp(rng.uniform(-6, 5));
      const bool dw = rng.integer(0, 1) == 1;
      const double beta = dw ? rng.uniform(0.01, 0.49) : 0.0;
      const Potential p = dw ? Potential::double_well(d, beta) : Potential::subbotin(d, 4.0);
      const double got = radial_objective(p, Perturbation::arctan(eps), CurvatureKind::kappa, t);
      CHECK(got == doctest::Approx(objective_oracle(d, eps, beta, dw, t)).epsilon(1e-11).scale(1.0));
    }
  }

  TEST_CASE("certificate polynomial is (objective - kappa_0)(1 + t^2)^2 / t") {
    TestRng rng(42);
    for (int k = 0; k < 200; ++k) {
      const int d = rng.integer(1, 8);
      const double eps = rng.uniform(0.05, 1.5);
      const double beta = rng.uniform(0.0, 0.49);
      const double t = std::exp(rng.uniform(-4, 4));
      const double q = 1 + t * t;
      const double kappa0 = eps * d - 2 * beta;
      const double lhs = (objective_oracle(d, eps, beta, true, t) - kappa0) * q * q / t;
      const Certificate c = d == 1 ? certify_double_well_1d(eps, beta) : certify_double_well(eps, d, beta);
      CHECK(evaluate(c.coefficients, t) == doctest::Approx(lhs).epsilon(1e-9).scale(1.0));
      if (d == 1) {
        // The generic polynomial under-estimates the d = 1 objective.
        const Certificate g = certify_double_well(eps, 1, beta);
        CHECK(evaluate(g.coefficients, t) <= lhs + 1e-9);
      }
    }
  }

  TEST_CASE("quadric certificate at the optimal eps, every d up to 64") {
    for (int d = 1; d <= 64; ++d) {
      const double eps = 8.0 / (3.0 * std::numbers::sqrt3 * (d + 1));
      const Certificate c = certify_quadric(eps, d);
      CHECK_MESSAGE(c.verdict, "d = " << d);
      CHECK(c.kappa_if_valid == doctest::Approx(eps * d).epsilon(1e-15));
      CHECK(c.min_value >= -1e-12);
    }
    // d = 1 is tangent: the minimum of g is a double root at t = 1/sqrt(3).
    const Certificate t1 = certify_quadric(4.0 / (3.0 * std::numbers::sqrt3), 1);
    REQUIRE(t1.roots.size() == 1);
    CHECK(t1.roots[0].multiplicity == 2);
    CHECK(t1.roots[0].t == doctest::Approx(1 / std::numbers::sqrt3).epsilon(1e-6));
  }

  TEST_CASE("eps above sqrt2 fails the quadric certificate") {
    CHECK_FALSE(certify_quadric(std::numbers::sqrt2 + 0.01, 1).verdict);
    CHECK_FALSE(certify_quadric(2.0, 1).verdict);
    CHECK(certify_quadric(2.0, 1).coefficients[4] < 0.0);
  }

  TEST_CASE("certificates agree with the grid search") {
    // For d >= 2 the certificate identity is exact, so sign changes of g are
    // exactly the points where the objective dips below its value at 0.
    TestRng rng(43);
    for (int k = 0; k < 40; ++k) {
      const int d = rng.integer(2, 10);
      const double eps = rng.uniform(0.05, 1.2);
      const double beta = rng.uniform(0.01, 0.45);
      SearchConfig cfg;
      cfg.allow_certificate = false;
      const auto grid = kappa(Potential::double_well(d, beta), Perturbation::arctan(eps), cfg);
      const Certificate c = certify_double_well(eps, d, beta);
      if (c.nonneg_on_halfline) {
        CHECK(grid.value == doctest::Approx(c.kappa_if_valid).epsilon(1e-8).scale(1.0));
        CHECK(grid.argmin_t <= 1e-6);
      }
      else
        CHECK(grid.value <= c.kappa_if_valid + 1e-9);
    }
  }

  TEST_CASE("root-isolation verdicts agree with a dense grid") {
    TestRng rng(44);
    int undecided = 0;
    for (int k = 0; k < 500; ++k) {
      const int d = rng.integer(1, 64);
      const double eps = rng.uniform(0.01, 1.6);
      const double beta = rng.integer(0, 1) == 1 ? rng.uniform(0.0, 0.49) : 0.0;
      const Certificate c = beta == 0.0 ? certify_quadric(eps, d) : certify_double_well(eps, d, beta);
      double gmin = evaluate(c.coefficients, 0.0);
      for (int i = 1; i <= 1000000; ++i) gmin = std::min(gmin, evaluate(c.coefficients, i * 1e-3));
      if (gmin < -1e-9) {
        CHECK_FALSE(c.nonneg_on_halfline);
      } else if (gmin > 1e-6) {
        CHECK(c.nonneg_on_halfline);
      } else {
        ++undecided;  // too close to tangency for the grid to settle it
      }
    }
    CHECK(undecided < 5);
  }

  TEST_CASE("kappa uses the certificate and cross-checks it on the grid") {
    const auto r = kappa(Potential::double_well(1, 0.25), Perturbation::arctan(1.0));
    CHECK(r.method == CurvatureMethod::polynomial_certificate);
    CHECK(r.certified);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-15));
    REQUIRE(r.certificate);
    CHECK(r.certificate->one_dimensional);
    REQUIRE(r.grid_cross_check);
    CHECK(*r.grid_cross_check == doctest::Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("kappa is twice kappa_tilde for the identity perturbation") {
    const Perturbation id = Perturbation::identity();
    TestRng rng(45);
    for (int k = 0; k < 50; ++k) {
      const int d = rng.integer(1, 5);
      Point x(static_cast<std::size_t>(d));
      for (double& v : x) v = rng.uniform(-3, 3);
      const Potential p = Potential::double_well(d, 0.25);
      CHECK(curvature_objective(p, id, CurvatureKind::kappa, x) ==
            2 * curvature_objective(p, id, CurvatureKind::kappa_tilde, x));
    }
    CHECK(kappa(Potential::gaussian(2, 0.7), id).value == 2 * kappa_tilde(Potential::gaussian(2, 0.7), id).value);
  }

  TEST_CASE("closed forms for the identity perturbation") {
    CHECK(kappa(Potential::gaussian(3, 1.5), Perturbation::identity()).value == 3.0);
    CHECK(kappa_tilde(Potential::gaussian(3, 1.5), Perturbation::identity()).value == 1.5);
    const auto s = kappa(Potential::subbotin(2, 4), Perturbation::identity());
    CHECK(s.value == 0.0);
    CHECK(s.certified);
    CHECK(kappa(Potential::double_well(2, 0.2), Perturbation::identity()).value == doctest::Approx(-0.4));
  }

  TEST_CASE("full-grid search on a non-radial custom potential") {
    Potential::Custom c;
    c.dim = 2;
    c.value = [](std::span<const double> x) { return 0.5 * x[0] * x[0] + 2 * x[1] * x[1]; };
    c.gradient = [](std::span<const double> x, std::span<double> g) { g[0] = x[0], g[1] = 4 * x[1]; };
    c.hessian = [](std::span<const double>, Matrix& h) { h(0, 0) = 1, h(1, 1) = 4, h(0, 1) = h(1, 0) = 0; };
    const auto r = kappa(Potential::custom(c), Perturbation::identity());
    CHECK(r.method == CurvatureMethod::full_grid);
    CHECK_FALSE(r.certified);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("objectives unbounded below are reported as such") {
    // a = exp(sqrt(1 + |x|^2)) on the Gaussian: psi ~ -|x|.
    Perturbation::Custom a;
    auto u = [](std::span<const double> x) { return std::sqrt(1 + dot(x, x)); };
    a.value = [u](std::span<const double> x) { return std::exp(u(x)); };
    a.gradient = [u](std::span<const double> x, std::span<double> g) {
      for (std::size_t i = 0; i < x.size(); ++i) g[i] = std::exp(u(x)) * x[i] / u(x);
    };
    a.laplacian = [u](std::span<const double> x) {
      const double s = u(x), t = dot(x, x), d = static_cast<double>(x.size());
      return std::exp(s) * (d / s - t / (s * s * s) + t / (s * s));
    };
    a.is_radial = true;
    SearchConfig cfg;
    cfg.t_max = 1e3;
    cfg.t_max_limit = 1e5;
    const auto r = kappa(Potential::gaussian(1, 1.0), Perturbation::custom(a), cfg);
    CHECK(r.unbounded_below);
    CHECK(std::isinf(r.value));
    CHECK(r.value < 0);
  }
}
