// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "logsob/linalg.hpp"

namespace logsob::testing {

inline bool close(double a, double b, double rel, double abs = 0.0) {
  return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

/// Central-difference gradient of f at x.
inline Point fd_gradient(const std::function<double(std::span<const double>)>& f, Point x, double h = 1e-6) {
  Point g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

/// Central-difference Hessian from an analytic gradient.
inline Matrix fd_jacobian(const std::function<void(std::span<const double>, std::span<double>)>& grad, Point x,
                          double h = 1e-6) {
  const std::size_t d = x.size();
  Matrix out(d, d);
  Point gp(d), gm(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double xj = x[j];
    x[j] = xj + h;
    grad(x, gp);
    x[j] = xj - h;
    grad(x, gm);
    x[j] = xj;
    for (std::size_t i = 0; i < d; ++i) out(i, j) = (gp[i] - gm[i]) / (2 * h);
  }
  return out;
}

/// Seeded test-input generator.
class TestRng {
 public:
  explicit TestRng(std::uint64_t s) : gen_(s) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace logsob::testing
