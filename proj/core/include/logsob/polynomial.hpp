// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace logsob {

/// Coefficients ordered from the highest degree down: c[0] t^n + ... + c[n].
using Coefficients = std::vector<double>;

double evaluate(std::span<const double> c, double t);

/// Running-error bound for Horner evaluation at t:
/// |computed - exact| <= bound (Higham, Accuracy and Stability, 5.1).
double evaluation_error_bound(std::span<const double> c, double t);

Coefficients derivative(std::span<const double> c);

struct RealRoot {
  double t = 0.0;
  int multiplicity = 1;

  friend bool operator==(const RealRoot&, const RealRoot&) = default;
};

struct RootIsolationOptions {
  /// Two simple roots closer than this are merged into a double root.
  double merge_tolerance = 1e-8;
};

/// All real roots in [lo, hi]. The interval is split at the critical points
/// (found recursively from the derivative); each monotone piece holds at
/// most one simple root, bracketed and polished with safeguarded Newton.
/// Critical points where the polynomial vanishes within its evaluation
/// error are reported as roots of even multiplicity (tangencies).
std::vector<RealRoot> real_roots(std::span<const double> c, double lo, double hi,
                                 const RootIsolationOptions& opt = {});

/// Cauchy bound: every root satisfies |t| <= 1 + max |c_i / c_0|.
double cauchy_root_bound(std::span<const double> c);

/// Roots on [0, infinity).
std::vector<RealRoot> nonnegative_real_roots(std::span<const double> c, const RootIsolationOptions& opt = {});

}  // namespace logsob
