// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "logsob/error.hpp"
#include "logsob/parallel.hpp"
#include "logsob/rng.hpp"

namespace logsob {

namespace {

// Relative size below which the entropy is treated as zero; the plug-in form
// cancels two terms of size mean(f^2 log f^2).
constexpr double kZeroEntropy = 1e-12;

struct Sums {
  double f2 = 0.0;
  double f2log = 0.0;
  double grad2 = 0.0;
};

struct Point3 {
  double entropy, dirichlet, ratio;
};

Point3 evaluate(const Sums& s, double n) {
  const double m = s.f2 / n;
  const double raw = s.f2log / n - m * std::log(m);
  const double scale = std::max(std::abs(s.f2log / n), std::abs(m * std::log(m)));
  const double ent = raw <= kZeroEntropy * std::max(1.0, scale) ? 0.0 : raw;
  const double dir = s.grad2 / n;
  return {ent, dir, dir > 0.0 ? ent / dir : 0.0};
}

}  // namespace

EntropyEstimate entropy_ratio(const TestFunction& f, const SampleSet& samples, const BootstrapOptions& opt) {
  if (f.dim != samples.dim) throw ParameterError("test function dimension does not match the samples");
  const std::size_t n = samples.size();
  if (n < 2) throw EstimationError("entropy_ratio needs at least 2 samples");

  std::vector<double> f2(n), f2log(n), grad2(n);
  parallel_for((n + 4095) / 4096, [&](std::size_t c) {
    Point g(static_cast<std::size_t>(f.dim));
    for (std::size_t i = c * 4096; i < std::min(n, (c + 1) * 4096); ++i) {
      const auto x = samples.point(i);
      const double v = f.value(x);
      f.gradient(x, g);
      f2[i] = v * v;
      f2log[i] = f2[i] > 0.0 ? f2[i] * std::log(f2[i]) : 0.0;
      double s = 0.0;
      for (double gi : g) s += gi * gi;
      grad2[i] = s;
      if (!std::isfinite(f2log[i]) || !std::isfinite(s))
        throw EvaluationError("test function is not finite at a sample", Point(x.begin(), x.end()));
    }
  });

  Sums total;
  for (std::size_t i = 0; i < n; ++i) {
    total.f2 += f2[i];
    total.f2log += f2log[i];
    total.grad2 += grad2[i];
  }
  const double nd = static_cast<double>(n);
  if (!(total.f2 > 0.0)) throw EstimationError("mean(f^2) vanishes on the samples");
  const Point3 est = evaluate(total, nd);

  EntropyEstimate out;
  out.entropy = est.entropy;
  out.dirichlet = est.dirichlet;
  out.ratio = est.ratio;
  out.n_samples = n;
  if (est.dirichlet == 0.0) {
    if (est.entropy > 0.0) throw EstimationError("degenerate test function: zero Dirichlet energy, positive entropy");
    out.degenerate = true;
    return out;
  }

  const NormalSource rng(opt.seed);
  std::vector<Point3> boot(opt.resamples);
  parallel_for(opt.resamples, [&](std::size_t b) {
    Sums s;
    for (std::size_t i = 0; i < n; i += 2) {
      const auto u = rng.uniforms(b, i / 2, 0);
      for (std::size_t k = 0; k < 2 && i + k < n; ++k) {
        const auto j = std::min(n - 1, static_cast<std::size_t>(u[k] * nd));
        s.f2 += f2[j];
        s.f2log += f2log[j];
        s.grad2 += grad2[j];
      }
    }
    boot[b] = evaluate(s, nd);
  });
  auto sd = [&](auto field) {
    if (boot.size() < 2) return 0.0;
    double m = 0.0;
    for (const auto& p : boot) m += field(p);
    m /= static_cast<double>(boot.size());
    double v = 0.0;
    for (const auto& p : boot) v += (field(p) - m) * (field(p) - m);
    return std::sqrt(v / static_cast<double>(boot.size() - 1));
  };
  out.entropy_se = sd([](const Point3& p) { return p.entropy; });
  out.dirichlet_se = sd([](const Point3& p) { return p.dirichlet; });
  out.ratio_se = sd([](const Point3& p) { return p.ratio; });
  return out;
}

}  // namespace logsob
