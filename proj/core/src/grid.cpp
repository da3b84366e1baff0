// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace logsob {

std::vector<double> radial_log_grid(double t_max, std::size_t n, double min_ratio) {
  if (!(t_max > 0.0) || n < 2) throw std::invalid_argument("radial_log_grid: need t_max > 0 and n >= 2");
  std::vector<double> t;
  t.reserve(n + 1);
  t.push_back(0.0);
  const double lo = std::log10(t_max * min_ratio);
  const double hi = std::log10(t_max);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    t.push_back(std::pow(10.0, e));
  }
  t.back() = t_max;
  return t;
}

ProbeGrid ProbeGrid::standard() { return with(1e6, 4096); }

ProbeGrid ProbeGrid::with(double t_max, std::size_t n) { return ProbeGrid{radial_log_grid(t_max, n)}; }

std::size_t ProbeGrid::directions(int dim) const { return dim == 1 ? 2 : 4; }

std::vector<Point> ProbeGrid::points(int dim) const {
  const auto d = static_cast<std::size_t>(dim);
  std::vector<Point> dirs;
  Point e1(d, 0.0);
  e1[0] = 1.0;
  Point m1 = e1;
  m1[0] = -1.0;
  dirs.push_back(e1);
  dirs.push_back(m1);
  if (dim > 1) {
    const double c = 1.0 / std::sqrt(static_cast<double>(d));
    dirs.emplace_back(d, c);
    dirs.emplace_back(d, -c);
  }
  std::vector<Point> out;
  out.reserve(dirs.size() * t.size());
  for (const auto& u : dirs) {
    for (double ti : t) {
      const double r = std::sqrt(ti);
      Point x(d);
      for (std::size_t k = 0; k < d; ++k) x[k] = r * u[k];
      out.push_back(std::move(x));
    }
  }
  return out;
}

bool grows_at_edge(std::span<const double> t, std::span<const double> values) {
  if (t.size() != values.size() || t.size() < 4) return false;
  for (double v : values)
    if (!std::isfinite(v)) return true;
  const double t_cut = t.back() / 100.0;
  double inner = -std::numeric_limits<double>::infinity();
  double outer = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= t_cut)
      inner = std::max(inner, values[i]);
    else
      outer = std::max(outer, values[i]);
  }
  if (!(outer > inner)) return false;
  const double scale = std::max(std::abs(inner), std::numeric_limits<double>::min());
  const bool still_rising = values.back() >= values[values.size() - 2];
  return still_rising && (outer - inner) > 1e-3 * scale;
}

}  // namespace logsob
