// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logsob/error.hpp"

namespace logsob {

namespace {

void check_dim(int dim) {
  if (dim < 1) throw ParameterError("dim must satisfy dim >= 1");
}

void check_index(int dim, int i) {
  check_dim(dim);
  if (i < 0 || i >= dim) throw ParameterError("coordinate index must lie in [0, dim)");
}

}  // namespace

TestFunction linear(Point v) {
  if (v.empty()) throw ParameterError("linear test function needs dim >= 1");
  TestFunction f;
  f.name = "linear";
  f.dim = static_cast<int>(v.size());
  f.value = [v](std::span<const double> x) { return dot(v, x); };
  f.gradient = [v](std::span<const double>, std::span<double> g) { std::copy(v.begin(), v.end(), g.begin()); };
  return f;
}

TestFunction tanh_coordinate(int dim, int i) {
  check_index(dim, i);
  TestFunction f;
  f.name = "tanh";
  f.dim = dim;
  f.value = [i](std::span<const double> x) { return std::tanh(x[i]); };
  f.gradient = [i](std::span<const double> x, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    const double th = std::tanh(x[i]);
    g[i] = 1.0 - th * th;
  };
  return f;
}

TestFunction one_plus_tanh(int dim, int i) {
  TestFunction f = tanh_coordinate(dim, i);
  f.name = "one_plus_tanh";
  f.value = [i](std::span<const double> x) { return 1.0 + std::tanh(x[i]); };
  return f;
}

TestFunction constant(int dim, double c) {
  check_dim(dim);
  TestFunction f;
  f.name = "constant";
  f.dim = dim;
  f.value = [c](std::span<const double>) { return c; };
  f.gradient = [](std::span<const double>, std::span<double> g) { std::fill(g.begin(), g.end(), 0.0); };
  return f;
}

TestFunction exp_tilt(Point theta) {
  if (theta.empty()) throw ParameterError("exp_tilt needs dim >= 1");
  TestFunction f;
  f.name = "exp_tilt";
  f.dim = static_cast<int>(theta.size());
  f.value = [theta](std::span<const double> x) { return std::exp(0.5 * dot(theta, x)); };
  f.gradient = [theta](std::span<const double> x, std::span<double> g) {
    const double v = std::exp(0.5 * dot(theta, x));
    for (std::size_t k = 0; k < theta.size(); ++k) g[k] = 0.5 * theta[k] * v;
  };
  return f;
}

TestFunction tanh_product(int dim, double shift) {
  check_dim(dim);
  TestFunction f;
  f.name = "tanh_product";
  f.dim = dim;
  f.value = [shift](std::span<const double> x) {
    double v = 1.0;
    for (double xi : x) v *= 1.0 + std::tanh(xi - shift);
    return v;
  };
  f.gradient = [shift](std::span<const double> x, std::span<double> g) {
    // d/dx_k prod = (1 - tanh_k) * prod, since (1 + th)' = (1 - th)(1 + th).
    double v = 1.0;
    for (double xi : x) v *= 1.0 + std::tanh(xi - shift);
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = (1.0 - std::tanh(x[k] - shift)) * v;
  };
  return f;
}

TestFunction gaussian_bump(Point center, double width) {
  if (center.empty()) throw ParameterError("gaussian_bump needs dim >= 1");
  if (!(width > 0.0)) throw ParameterError("gaussian_bump requires width > 0");
  TestFunction f;
  f.name = "gaussian_bump";
  f.dim = static_cast<int>(center.size());
  const double s = 1.0 / (2.0 * width * width);
  f.value = [center, s](std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < center.size(); ++k) r2 += (x[k] - center[k]) * (x[k] - center[k]);
    return 1.0 + std::exp(-s * r2);
  };
  f.gradient = [center, s](std::span<const double> x, std::span<double> g) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < center.size(); ++k) r2 += (x[k] - center[k]) * (x[k] - center[k]);
    const double e = std::exp(-s * r2);
    for (std::size_t k = 0; k < center.size(); ++k) g[k] = -2.0 * s * (x[k] - center[k]) * e;
  };
  return f;
}

TestFunction test_function_by_name(const std::string& name, int dim) {
  check_dim(dim);
  if (name == "linear") {
    Point v(static_cast<std::size_t>(dim), 0.0);
    v[0] = 1.0;
    return linear(v);
  }
  if (name == "tanh") return tanh_coordinate(dim);
  if (name == "one_plus_tanh") return one_plus_tanh(dim);
  if (name == "constant") return constant(dim);
  if (name == "exp_tilt") {
    Point theta(static_cast<std::size_t>(dim), 0.0);
    theta[0] = 0.8;
    return exp_tilt(theta);
  }
  throw ParseError("unknown test function '" + name + "'");
}

bool nondecreasing_on_grid(const TestFunction& f, double lo, double hi, int points) {
  if (f.dim != 1) throw ParameterError("monotonicity is only checked in dimension 1");
  double prev = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double x = lo + (hi - lo) * k / (points - 1);
    const double v = f.value(std::span<const double>(&x, 1));
    if (v < prev) return false;
    prev = v;
  }
  return true;
}

double min_on_grid(const TestFunction& f, double lo, double hi, int points) {
  double m = std::numeric_limits<double>::infinity();
  Point x(static_cast<std::size_t>(f.dim), 0.0);
  for (int k = 0; k < points; ++k) {
    x[0] = lo + (hi - lo) * k / (points - 1);
    m = std::min(m, f.value(x));
  }
  return m;
}

}  // namespace logsob
