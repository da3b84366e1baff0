// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "logsob/linalg.hpp"

namespace logsob {

/// Radial probe coordinates t = |x|^2: t = 0 followed by `n` log-spaced
/// values from t_max * min_ratio up to t_max.
std::vector<double> radial_log_grid(double t_max, std::size_t n, double min_ratio = 1e-12);

/// Default probe set used for grid-estimated norms and condition checks:
/// t in [0, 1e6], 4096 log-spaced points plus t = 0.
struct ProbeGrid {
  std::vector<double> t;

  static ProbeGrid standard();
  static ProbeGrid with(double t_max, std::size_t n);

  /// Points sqrt(t) * u for each t and each probe direction u
  /// (+-e_1 and +-(1,...,1)/sqrt(d)). Ordered direction-major, t-minor.
  std::vector<Point> points(int dim) const;
  std::size_t directions(int dim) const;
};

/// Heuristic growth test on a sequence sampled along increasing t: true when
/// the values still grow over the last two decades of the grid.
bool grows_at_edge(std::span<const double> t, std::span<const double> values);

}  // namespace logsob
