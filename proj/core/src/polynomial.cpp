// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace logsob {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2.0;

Coefficients trim(std::span<const double> c) {
  std::size_t k = 0;
  while (k + 1 < c.size() && c[k] == 0.0) ++k;
  return Coefficients(c.begin() + static_cast<std::ptrdiff_t>(k), c.end());
}

bool vanishes_at(std::span<const double> c, double t) {
  return std::abs(evaluate(c, t)) <= evaluation_error_bound(c, t);
}

// Root of a monotone piece [a, b] with f(a), f(b) of opposite signs.
double bracketed_root(std::span<const double> c, std::span<const double> dc, double a, double b) {
  double fa = evaluate(c, a);
  double t = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const double ft = evaluate(c, t);
    if (ft == 0.0) return t;
    if ((ft < 0.0) == (fa < 0.0)) {
      a = t;
      fa = ft;
    } else {
      b = t;
    }
    const double dft = evaluate(dc, t);
    double next = dft != 0.0 ? t - ft / dft : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - t) <= 4.0 * kUnit * std::max(1.0, std::abs(t)) || b - a <= 4.0 * kUnit * std::max(1.0, std::abs(t)))
      return next;
    t = next;
  }
  return t;
}

int vanishing_order(std::span<const double> c, double t) {
  int order = 0;
  Coefficients p(c.begin(), c.end());
  while (p.size() > 1 && vanishes_at(p, t)) {
    ++order;
    p = derivative(p);
  }
  return order;
}

}  // namespace

double evaluate(std::span<const double> c, double t) {
  double s = 0.0;
  for (double ci : c) s = s * t + ci;
  return s;
}

double evaluation_error_bound(std::span<const double> c, double t) {
  double s = 0.0;
  double mu = 0.0;
  const double at = std::abs(t);
  for (std::size_t i = 0; i < c.size(); ++i) {
    s = s * t + c[i];
    mu = mu * at + std::abs(s);
  }
  // Higham's running bound gamma-style factor 2u * mu, plus a floor for
  // roundoff in the coefficients themselves.
  return 2.0 * kUnit * (2.0 * mu - std::abs(s)) + 8.0 * kUnit * std::abs(s) + std::numeric_limits<double>::min();
}

Coefficients derivative(std::span<const double> c) {
  if (c.size() <= 1) return Coefficients{0.0};
  const std::size_t n = c.size() - 1;
  Coefficients d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = c[i] * static_cast<double>(n - i);
  return d;
}

double cauchy_root_bound(std::span<const double> c) {
  const Coefficients p = trim(c);
  if (p.size() <= 1) return 0.0;
  double m = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) m = std::max(m, std::abs(p[i] / p[0]));
  return 1.0 + m;
}

std::vector<RealRoot> real_roots(std::span<const double> c_in, double lo, double hi, const RootIsolationOptions& opt) {
  if (!(lo <= hi)) throw std::invalid_argument("real_roots: empty interval");
  const Coefficients c = trim(c_in);
  std::vector<RealRoot> roots;
  if (c.size() <= 1) return roots;  // constant: no isolated roots

  const Coefficients dc = derivative(c);
  std::vector<double> knots{lo};
  if (c.size() > 2) {
    for (const auto& r : real_roots(dc, lo, hi, opt))
      if (r.t > lo && r.t < hi) knots.push_back(r.t);
  }
  knots.push_back(hi);

  // Tangencies at interior critical points and roots at the end points.
  std::vector<RealRoot> found;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const double t = knots[k];
    const bool interior = k > 0 && k + 1 < knots.size();
    if (vanishes_at(c, t)) {
      int m = vanishing_order(c, t);
      if (interior) m = std::max(m, 2);
      found.push_back({t, m});
    }
  }
  // Simple roots strictly inside monotone pieces.
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k];
    const double b = knots[k + 1];
    if (vanishes_at(c, a) || vanishes_at(c, b)) continue;
    const double fa = evaluate(c, a);
    const double fb = evaluate(c, b);
    if ((fa < 0.0) != (fb < 0.0)) found.push_back({bracketed_root(c, dc, a, b), 1});
  }
  std::sort(found.begin(), found.end(), [](const RealRoot& x, const RealRoot& y) { return x.t < y.t; });

  for (const auto& r : found) {
    if (!roots.empty() && r.t - roots.back().t <= opt.merge_tolerance) {
      roots.back().multiplicity += r.multiplicity;
      continue;
    }
    roots.push_back(r);
  }
  return roots;
}

std::vector<RealRoot> nonnegative_real_roots(std::span<const double> c, const RootIsolationOptions& opt) {
  return real_roots(c, 0.0, std::max(1.0, cauchy_root_bound(c)), opt);
}

}  // namespace logsob
