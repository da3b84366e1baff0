// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "logsob/bounds.hpp"
#include "logsob/error.hpp"

using namespace logsob;

namespace {

// 4 e^{eps pi / 4} / kappa: for the arctan family sup a = e^{eps pi / 4} and
// sup a^{-1} = 1, since arctan |x|^2 ranges over [0, pi / 2).
double fk_oracle(double eps, double kappa) { return 4 * std::exp(eps * std::numbers::pi / 4) / kappa; }

bool has_failed(const BoundReport& r, std::string_view name) {
  const Precondition* p = r.find(name);
  return p != nullptr && !p->satisfied;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("Bakry-Emery and FK agree on the Gaussian with a = 1") {
    for (double rho : {0.5, 1.0, 3.0}) {
      for (int d : {1, 3, 10}) {
        const Potential p = Potential::gaussian(d, rho);
        const BoundReport be = bakry_emery_bound(p);
        const BoundReport fk = fk_bound(p, Perturbation::identity());
        CHECK(be.valid);
        CHECK(be.certified);
        CHECK(be.constant == doctest::Approx(2 / rho).epsilon(1e-15));
        CHECK(fk.valid);
        CHECK(fk.certified);
        CHECK(fk.constant == doctest::Approx(2 / rho).epsilon(1e-15));
      }
    }
    CHECK(fk_bound(Potential::gaussian(2, 1.0), Perturbation::identity()).constant == 2.0);
  }

  TEST_CASE("optimized quadric bound matches its closed form") {
    for (int d = 1; d <= 64; ++d) {
      const EpsilonChoice c = optimize_epsilon(CertifiedFamily::quadric, d);
      const double eps = 8.0 / (3.0 * std::numbers::sqrt3 * (d + 1));
      CHECK(c.canonical);
      CHECK(c.eps == doctest::Approx(eps).epsilon(1e-15));
      CHECK(c.report.valid);
      CHECK(c.report.certified);
      const double oracle = fk_oracle(eps, eps * d);
      CHECK(c.report.constant == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(quadric_closed_form_bound(d) == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(c.report.constant <= envelope(CertifiedFamily::quadric));
    }
    CHECK(envelope(CertifiedFamily::quadric) ==
          doctest::Approx(3 * std::numbers::e * std::numbers::sqrt3).epsilon(1e-15));
  }

  TEST_CASE("optimized double-well bound matches its closed form") {
    for (double beta : {0.05, 0.25, 0.45}) {
      for (int d : {1, 2, 5, 16, 32}) {
        const EpsilonChoice c = optimize_epsilon(CertifiedFamily::double_well, d, beta);
        const double eps = 2.0 / (d + 1);
        const double kappa = 2.0 * d / (d + 1) - 2 * beta;
        CHECK(c.canonical);
        CHECK(c.report.valid);
        REQUIRE(c.report.curvature.has_value());
        CHECK(c.report.curvature->value == doctest::Approx(kappa).epsilon(1e-8));
        CHECK(c.report.constant == doctest::Approx(fk_oracle(eps, kappa)).epsilon(1e-8));
        CHECK(double_well_closed_form_bound(d, beta) == doctest::Approx(fk_oracle(eps, kappa)).epsilon(1e-12));
        CHECK(c.report.constant <= envelope(CertifiedFamily::double_well, beta));
      }
      CHECK(envelope(CertifiedFamily::double_well, beta) ==
            doctest::Approx(4 * std::numbers::e / (1 - 2 * beta)).epsilon(1e-15));
    }
  }

  TEST_CASE("the canonical eps is not beaten on a finer eps grid") {
    const EpsilonChoice c = optimize_epsilon(CertifiedFamily::quadric, 3);
    CHECK(c.grid_confirmed);
    for (double f : {0.5, 0.8, 0.95}) {
      const BoundReport r = fk_bound(Potential::subbotin(3, 4.0), Perturbation::arctan(f * c.eps));
      CHECK(r.constant >= c.report.constant);
    }
  }

  TEST_CASE("dimension sweep") {
    const std::vector<int> dims{1, 2, 3, 8};
    const SweepTable t = dimension_sweep(CertifiedFamily::quadric, dims);
    REQUIRE(t.rows.size() == dims.size());
    CHECK(t.all_within_envelope);
    for (std::size_t i = 0; i < dims.size(); ++i) {
      CHECK(t.rows[i].dim == dims[i]);
      CHECK(t.rows[i].bound == doctest::Approx(quadric_closed_form_bound(dims[i])).epsilon(1e-12));
    }
    CHECK_THROWS_AS(dimension_sweep(CertifiedFamily::quadric, std::span<const int>{}), ParameterError);
  }

  TEST_CASE("optimize_epsilon rejects inadmissible parameters") {
    CHECK_THROWS_AS(optimize_epsilon(CertifiedFamily::double_well, 2, 0.5), ParameterError);
    CHECK_THROWS_AS(optimize_epsilon(CertifiedFamily::quadric, 0), ParameterError);
  }

  TEST_CASE("negative controls report invalid bounds") {
    // Hess V is singular at the origin for both of these.
    const BoundReport sub = bakry_emery_bound(Potential::subbotin(2, 4.0));
    CHECK_FALSE(sub.valid);
    CHECK(std::isinf(sub.constant));
    CHECK(has_failed(sub, "rho > 0"));
    const BoundReport dw = bakry_emery_bound(Potential::double_well(2, 0.25));
    CHECK_FALSE(dw.valid);
    CHECK(dw.rho == doctest::Approx(-0.25));

    const BoundReport fk = fk_bound(Potential::subbotin(3, 4.0), Perturbation::identity());
    CHECK_FALSE(fk.valid);
    CHECK(fk.certified);
    CHECK(has_failed(fk, "kappa_a > 0"));
    REQUIRE(fk.curvature.has_value());
    CHECK(fk.curvature->value == doctest::Approx(0.0).scale(1.0));

    // eps too large for the certificate.
    const BoundReport big = fk_bound(Potential::subbotin(1, 4.0), Perturbation::arctan(3.0));
    CHECK_FALSE(big.valid);
  }

  TEST_CASE("monotone FK bound") {
    const Potential p = Potential::subbotin(1, 4.0);
    // arctan |x|^2 is even, hence not monotone.
    const BoundReport arc = fk_mono_bound(p, Perturbation::arctan(0.5));
    CHECK_FALSE(arc.valid);
    CHECK(has_failed(arc, "a non-decreasing"));

    // a = exp((eps/2) arctan(x - 1)) is increasing with bounded log-gradient,
    // and log a is convex at 0 where Hess V vanishes.
    const double eps = 0.5;
    Perturbation::Custom c;
    c.value = [eps](std::span<const double> x) { return std::exp(eps / 2 * std::atan(x[0] - 1)); };
    c.gradient = [eps](std::span<const double> x, std::span<double> g) {
      const double y = x[0] - 1;
      g[0] = std::exp(eps / 2 * std::atan(y)) * eps / 2 / (1 + y * y);
    };
    c.laplacian = [eps](std::span<const double> x) {
      const double y = x[0] - 1, q = 1 + y * y, u1 = eps / 2 / q, u2 = -eps * y / (q * q);
      return std::exp(eps / 2 * std::atan(y)) * (u2 + u1 * u1);
    };
    const BoundReport mono = fk_mono_bound(p, Perturbation::custom(c));
    CHECK(mono.valid);
    CHECK_FALSE(mono.certified);
    CHECK(mono.scope.find("non-decreasing") != std::string::npos);
    REQUIRE(mono.curvature.has_value());
    CHECK(mono.constant == doctest::Approx(2 / mono.curvature->value));
    // Uncertified reports name a heuristic precondition.
    CHECK(std::any_of(mono.preconditions.begin(), mono.preconditions.end(), [](const auto& c) { return c.heuristic; }));

    CHECK_FALSE(fk_mono_bound(Potential::subbotin(2, 4.0), Perturbation::identity()).valid);
  }

  TEST_CASE("Holley-Stroock") {
    const BoundReport id = holley_stroock_bound(Potential::gaussian(2, 2.0), Perturbation::identity());
    CHECK(id.valid);
    CHECK(id.constant == doctest::Approx(1.0));

    // V_a = |x|^2/2 + eps arctan |x|^2 is non-convex for large eps.
    const double eps = 0.2;
    const BoundReport hs = holley_stroock_bound(Potential::gaussian(1, 1.0), Perturbation::arctan(eps));
    CHECK(hs.valid);
    const double osc = std::exp(eps * std::numbers::pi / 4);
    CHECK(hs.constant >= std::pow(osc, 4) * 2 / (1 + 2 * eps) - 1e-9);
    CHECK_FALSE(holley_stroock_bound(Potential::subbotin(1, 4.0), Perturbation::identity()).valid);
  }
}
