// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "logsob/polynomial.hpp"
#include "support.hpp"

using namespace logsob;
using logsob::testing::TestRng;

namespace {

// Coefficients (high to low) of lead * prod (t - r_i) * prod ((t - re)^2 + im^2).
Coefficients expand(double lead, const std::vector<double>& real, const std::vector<std::pair<double, double>>& pairs) {
  Coefficients c{lead};
  auto mul = [&](const Coefficients& f) {
    Coefficients out(c.size() + f.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) out[i + j] += c[i] * f[j];
    c = out;
  };
  for (double r : real) mul({1.0, -r});
  for (auto [re, im] : pairs) mul({1.0, -2 * re, re * re + im * im});
  return c;
}

}  // namespace

TEST_SUITE("polynomial") {
  TEST_CASE("Horner evaluation and derivative") {
    const Coefficients c{2, -3, 0, 5};
    CHECK(evaluate(c, 2.0) == 2 * 8 - 3 * 4 + 5);
    CHECK(derivative(c) == Coefficients{6, -6, 0});
    CHECK(evaluation_error_bound(c, 2.0) >= 0.0);
    CHECK(cauchy_root_bound(c) == doctest::Approx(1 + 2.5));
  }

  TEST_CASE("random real roots are recovered") {
    TestRng rng(31);
    int cases = 0;
    for (; cases < 500; ++cases) {
      const int nreal = rng.integer(0, 4);
      const int npairs = rng.integer(0, (5 - nreal) / 2);
      std::vector<double> roots;
      while (static_cast<int>(roots.size()) < nreal) {
        const double r = rng.uniform(-5, 10);
        if (std::all_of(roots.begin(), roots.end(), [&](double q) { return std::abs(q - r) > 1e-2; }))
          roots.push_back(r);
      }
      std::vector<std::pair<double, double>> pairs;
      for (int k = 0; k < npairs; ++k) pairs.emplace_back(rng.uniform(-3, 6), rng.uniform(0.2, 3));
      const double lead = rng.uniform(0.5, 3) * (rng.integer(0, 1) ? 1 : -1);
      const auto c = expand(lead, roots, pairs);
      const auto found = real_roots(c, -6.0, 11.0);
      std::sort(roots.begin(), roots.end());
      REQUIRE_MESSAGE(found.size() == roots.size(), "case " << cases);
      for (std::size_t i = 0; i < roots.size(); ++i) {
        CHECK(found[i].t == doctest::Approx(roots[i]).epsilon(1e-8).scale(1.0));
        CHECK(found[i].multiplicity == 1);
      }
    }
    CHECK(cases == 500);
  }

  TEST_CASE("double roots are reported as tangencies") {
    const auto c = expand(2.0, {1.5, 1.5, -1.0}, {});
    const auto r = real_roots(c, -3, 3);
    REQUIRE(r.size() == 2);
    CHECK(r[0].t == doctest::Approx(-1.0));
    CHECK(r[0].multiplicity == 1);
    CHECK(r[1].t == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(r[1].multiplicity == 2);

    const auto q = expand(1.0, {0.25, 0.25}, {{1.0, 0.5}});
    const auto rq = nonnegative_real_roots(q);
    REQUIRE(rq.size() == 1);
    CHECK(rq[0].multiplicity == 2);
  }

  TEST_CASE("no real roots") {
    const auto c = expand(1.0, {}, {{0.5, 1.0}, {2.0, 0.1}});
    CHECK(nonnegative_real_roots(c).empty());
  }

  TEST_CASE("roots outside the window are ignored, endpoints included") {
    const auto c = expand(1.0, {0.0, 2.0, 7.0}, {});
    const auto r = nonnegative_real_roots(c);
    REQUIRE(r.size() == 3);
    CHECK(r[0].t == doctest::Approx(0.0).scale(1.0));
    CHECK(real_roots(c, 1.0, 5.0).size() == 1);
  }
}
