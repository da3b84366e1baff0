// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "logsob/error.hpp"
#include "logsob/verify.hpp"

using namespace logsob;

namespace {

// a = exp(|x|^2): |grad a| / a = 2|x| is unbounded.
Perturbation quadratic_exponential() {
  Perturbation::Custom c;
  c.value = [](std::span<const double> x) { return std::exp(dot(x, x)); };
  c.gradient = [](std::span<const double> x, std::span<double> g) {
    const double a = std::exp(dot(x, x));
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2 * x[i] * a;
  };
  c.laplacian = [](std::span<const double> x) {
    const double r2 = dot(x, x);
    return std::exp(r2) * (2.0 * static_cast<double>(x.size()) + 4 * r2);
  };
  c.is_radial = true;
  c.name = "exp(|x|^2)";
  return Perturbation::custom(c);
}

template <class F>
std::string precondition_of(F&& f) {
  try {
    f();
  } catch (const PreconditionError& e) {
    return e.condition();
  }
  return "";
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("representation on the Gaussian matches the exact gradient") {
    const Potential p = Potential::gaussian(1, 1.0);
    SdeConfig cfg;
    cfg.dt = 0.01;
    cfg.horizon = 0.5;
    cfg.n_paths = 4000;
    cfg.x0 = {0.5};
    const CheckReport r =
        representation_check(p, Perturbation::arctan(0.3), linear({1.0}), cfg, Point{std::exp(-0.5)});
    CHECK(r.pass);
    CHECK(r.comparisons.size() == 6);
    CHECK(r.k == 3.0);
    CHECK(r.c == 5.0);
    REQUIRE(r.find("tangent") != nullptr);
    // J is deterministic here, so the tangent estimator has no spread.
    CHECK(r.find("tangent")->std_error[0] == 0.0);
    CHECK(r.find("girsanov") != nullptr);
    CHECK(r.find("finite_difference") != nullptr);
  }

  TEST_CASE("representation across seeds, potentials and dimensions") {
    const std::vector<Potential> ps{Potential::gaussian(1, 1.0), Potential::subbotin(1, 4.0),
                                    Potential::double_well(1, 0.25), Potential::gaussian(2, 1.0),
                                    Potential::subbotin(2, 4.0), Potential::double_well(2, 0.25)};
    for (const auto& p : ps) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SdeConfig cfg;
        cfg.dt = 1e-3;
        cfg.horizon = 0.5;
        cfg.n_paths = 1000;
        cfg.seed = seed;
        cfg.x0 = Point(static_cast<std::size_t>(p.dim()), 0.0);
        cfg.x0[0] = 0.3;
        const CheckReport r = representation_check(p, Perturbation::arctan(0.4), tanh_coordinate(p.dim()), cfg);
        CHECK_MESSAGE(r.pass, p.name() << " seed " << seed);
      }
    }
  }

  TEST_CASE("representation refuses perturbations violating (G)") {
    SdeConfig cfg;
    cfg.n_paths = 10;
    CHECK(precondition_of([&] {
            representation_check(Potential::gaussian(1, 1.0), quadratic_exponential(), linear({1.0}), cfg);
          }) == "(G)");
    CHECK(precondition_of([&] { martingale_check(Potential::gaussian(1, 1.0), quadratic_exponential(), cfg); }) ==
          "(G)");
  }

  TEST_CASE("martingale check at several times") {
    SdeConfig cfg;
    cfg.dt = 0.01;
    cfg.horizon = 1.0;
    cfg.n_paths = 5000;
    cfg.checkpoints = {0.25, 0.5, 1.0};
    const CheckReport r = martingale_check(Potential::subbotin(2, 4.0), Perturbation::arctan(0.4), cfg);
    CHECK(r.pass);
    REQUIRE(r.estimates.size() == 3);
    CHECK(r.estimates[0].name == "R(t=0.25)");
    for (const auto& e : r.estimates) CHECK(e.std_error[0] < 0.05);
  }

  TEST_CASE("monotone comparison") {
    SdeConfig cfg;
    cfg.dt = 0.01;
    cfg.horizon = 0.5;
    cfg.n_paths = 4000;
    const Potential p = Potential::subbotin(1, 4.0);
    const CheckReport r = monotone_comparison(p, Perturbation::arctan(0.5), one_plus_tanh(1), cfg);
    CHECK(r.pass);
    REQUIRE(r.find("difference") != nullptr);
    CHECK(r.comparisons.at(0).one_sided);
    CHECK_FALSE(r.notes.empty());  // arctan |x|^2 is not monotone

    CHECK(precondition_of([&] { monotone_comparison(p, Perturbation::arctan(0.5), constant(1, -1.0), cfg); }) ==
          "f > 0");
    CHECK(precondition_of([&] {
            TestFunction dec = one_plus_tanh(1);
            dec.value = [](std::span<const double> x) { return 1 - std::tanh(x[0]) + 0.5; };
            monotone_comparison(p, Perturbation::arctan(0.5), dec, cfg);
          }) == "f non-decreasing");
    CHECK(precondition_of([&] {
            monotone_comparison(Potential::subbotin(2, 4.0), Perturbation::arctan(0.5), one_plus_tanh(2), cfg);
          }) == "d = 1");
  }

  TEST_CASE("audit family composition") {
    CHECK(audit_family(1).size() == 8 + 3 + 4);
    CHECK(audit_family(3).size() == 8 + 3 + 3 + 4);
    for (const auto& f : audit_family(2)) CHECK(f.dim == 2);
  }

  TEST_CASE("audit of the Gaussian against Bakry-Emery") {
    const Potential p = Potential::gaussian(2, 1.0);
    const SampleSet s = sample_measure(p, 50000, SampleMethod::radial_exact, 21);
    const CheckReport r = lsi_audit(p, bakry_emery_bound(p), s, {50, 0});
    CHECK(r.pass);
    CHECK(r.comparisons.size() == audit_family(2).size());
  }

  TEST_CASE("audit catches a constant that is too small") {
    const Potential p = Potential::gaussian(1, 1.0);
    const SampleSet s = sample_measure(p, 50000, SampleMethod::radial_exact, 22);
    BoundReport fake = bakry_emery_bound(p);
    fake.constant = 1.0;  // the true constant is 2
    CHECK_FALSE(lsi_audit(p, fake, s, {50, 0}).pass);

    BoundReport invalid = bakry_emery_bound(Potential::subbotin(1, 4.0));
    CHECK(precondition_of([&] { lsi_audit(p, invalid, s); }) == "bound.valid");
  }
}
