// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/sde.hpp"

#include <algorithm>
#include <cmath>

#include "logsob/error.hpp"
#include "logsob/parallel.hpp"
#include "logsob/rng.hpp"

namespace logsob {

namespace {

constexpr std::size_t kChunk = 256;

// Welford accumulator over vectors; merged with Chan's pairwise update.
struct Moments {
  std::size_t n = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit Moments(std::size_t width = 0) : mean(width, 0.0), m2(width, 0.0) {}

  void add(std::span<const double> x) {
    ++n;
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double d = x[k] - mean[k];
      mean[k] += d * inv;
      m2[k] += d * (x[k] - mean[k]);
    }
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n), nt = na + nb;
    for (std::size_t k = 0; k < mean.size(); ++k) {
      const double d = o.mean[k] - mean[k];
      mean[k] += d * nb / nt;
      m2[k] += o.m2[k] + d * d * na * nb / nt;
    }
    n += o.n;
  }
};

Point origin_or(const SdeConfig& cfg, int dim) {
  if (cfg.x0.empty()) return Point(static_cast<std::size_t>(dim), 0.0);
  if (cfg.x0.size() != static_cast<std::size_t>(dim))
    throw ParameterError("x0 has " + std::to_string(cfg.x0.size()) + " coordinates, expected " + std::to_string(dim));
  return cfg.x0;
}

bool escaped(std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return !(r2 <= kDivergenceRadius * kDivergenceRadius);
}

}  // namespace

std::string_view to_string(Variant v) { return v == Variant::plain ? "plain" : "perturbed"; }

StepPlan plan_steps(const SdeConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ParameterError("dt must satisfy dt > 0");
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) throw ParameterError("horizon must satisfy T > 0");
  if (cfg.dt > cfg.horizon) throw ParameterError("dt must satisfy dt <= T");
  if (cfg.n_paths == 0) throw ParameterError("n_paths must satisfy n_paths >= 1");
  StepPlan plan;
  const double ratio = cfg.horizon / cfg.dt;
  plan.steps = static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
  plan.dt = cfg.horizon / static_cast<double>(plan.steps);
  for (double t : cfg.checkpoints) {
    if (!(t > 0.0 && t <= cfg.horizon * (1.0 + 1e-12))) throw ParameterError("checkpoints must lie in (0, T]");
    const auto k = static_cast<std::size_t>(std::llround(t / plan.dt));
    plan.checkpoint_steps.push_back(std::clamp<std::size_t>(k, 1, plan.steps));
  }
  return plan;
}

PathRecord simulate_path(const Potential& p, const Perturbation& a, Variant variant, std::span<const double> x0,
                         const StepPlan& plan, std::uint64_t seed, std::size_t id) {
  const std::size_t d = static_cast<std::size_t>(p.dim());
  const bool weighted = variant == Variant::perturbed && a.family() != PerturbationFamily::identity;
  const double dt = plan.dt;
  const double sq = std::sqrt(2.0 * dt);
  const NormalSource rng(seed);

  PathRecord rec;
  rec.id = id;
  rec.x_T.assign(x0.begin(), x0.end());
  rec.J_T = Matrix::identity(d);
  rec.checkpoint_log_weights.assign(plan.checkpoint_steps.size(), 0.0);

  Point& x = rec.x_T;
  Point xi(d), gv(d), g(d, 0.0);
  Matrix h(d, d), m(d, d), tmp(d, d);
  double psi_prev = 0.0;
  double log_a0 = 0.0;
  if (weighted) {
    log_a0 = a.log_value(x);
    a.log_grad(x, g);
    p.gradient(x, gv);
    psi_prev = Perturbation::psi_from(a.laplacian_over_a(x), g, gv);
  }

  auto record_checkpoints = [&](std::size_t step) {
    for (std::size_t j = 0; j < plan.checkpoint_steps.size(); ++j)
      if (plan.checkpoint_steps[j] == step)
        rec.checkpoint_log_weights[j] = weighted ? a.log_value(x) - log_a0 - rec.psi_integral : 0.0;
  };

  for (std::size_t k = 0; k < plan.steps; ++k) {
    rng.normals(id, k, xi);
    p.gradient(x, gv);
    p.hessian(x, h);

    // Tangent update with Hess V at the current state, in both variants.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - dt * h(i, j);
    multiply_into(rec.J_T, m, tmp);
    std::swap(rec.J_T, tmp);

    if (weighted) {
      double gxi = 0.0, g2 = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        gxi += g[i] * xi[i];
        g2 += g[i] * g[i];
      }
      rec.log_weight_ito += sq * gxi - g2 * dt;
      for (std::size_t i = 0; i < d; ++i) x[i] += sq * xi[i] - (gv[i] + 2.0 * g[i]) * dt;
    } else {
      for (std::size_t i = 0; i < d; ++i) x[i] += sq * xi[i] - gv[i] * dt;
    }

    if (escaped(x)) {
      rec.divergent = true;
      return rec;
    }

    if (weighted) {
      a.log_grad(x, g);
      p.gradient(x, gv);
      const double psi = Perturbation::psi_from(a.laplacian_over_a(x), g, gv);
      rec.psi_integral += 0.5 * dt * (psi_prev + psi);
      psi_prev = psi;
    }
    if (!plan.checkpoint_steps.empty()) record_checkpoints(k + 1);
  }

  if (weighted) rec.log_weight = a.log_value(x) - log_a0 - rec.psi_integral;
  if (!std::isfinite(rec.log_weight) || !std::isfinite(rec.log_weight_ito)) rec.divergent = true;
  for (double v : rec.J_T.data())
    if (!std::isfinite(v)) rec.divergent = true;
  return rec;
}

std::vector<PathRecord> simulate(const Potential& p, const Perturbation& a, const SdeConfig& cfg, Variant variant) {
  const StepPlan plan = plan_steps(cfg);
  const Point x0 = origin_or(cfg, p.dim());
  std::vector<PathRecord> out(cfg.n_paths);
  parallel_for(cfg.n_paths, [&](std::size_t i) { out[i] = simulate_path(p, a, variant, x0, plan, cfg.seed, i); });
  return out;
}

Estimate accumulate_paths(std::size_t n_paths, std::size_t width, const PathSampler& sample) {
  const std::size_t chunks = (n_paths + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks, Moments(width));
  std::vector<std::size_t> divergent(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> buf(width);
    const std::size_t end = std::min(n_paths, (c + 1) * kChunk);
    for (std::size_t id = c * kChunk; id < end; ++id) {
      if (sample(id, buf))
        partial[c].add(buf);
      else
        ++divergent[c];
    }
  });
  Moments total(width);
  Estimate est;
  for (std::size_t c = 0; c < chunks; ++c) {
    total.merge(partial[c]);
    est.n_divergent += divergent[c];
  }
  est.n_valid = total.n;
  if (est.n_valid < 2)
    throw EstimationError("fewer than 2 valid paths (" + std::to_string(est.n_valid) + " valid, " +
                          std::to_string(est.n_divergent) + " divergent)");
  est.mean = total.mean;
  est.std_error.resize(width);
  const double n = static_cast<double>(total.n);
  for (std::size_t k = 0; k < width; ++k) est.std_error[k] = std::sqrt(std::max(0.0, total.m2[k]) / (n - 1.0) / n);
  est.valid = static_cast<double>(est.n_divergent) <= kMaxDivergentFraction * static_cast<double>(n_paths);
  return est;
}

Payoff payoff_value(const TestFunction& f) {
  return {1, [f](const PathRecord& r, std::span<double> out) { out[0] = f.value(r.x_T); }};
}

Payoff payoff_weighted_value(const TestFunction& f) {
  return {1, [f](const PathRecord& r, std::span<double> out) { out[0] = std::exp(r.log_weight) * f.value(r.x_T); }};
}

Payoff payoff_weight() {
  return {1, [](const PathRecord& r, std::span<double> out) { out[0] = std::exp(r.log_weight); }};
}

Payoff payoff_tangent_gradient(const TestFunction& f) {
  const auto d = static_cast<std::size_t>(f.dim);
  return {d, [f, d](const PathRecord& r, std::span<double> out) {
            Point g(d);
            f.gradient(r.x_T, g);
            apply(r.J_T, g, out);
          }};
}

Payoff payoff_fk_gradient(const TestFunction& f) {
  const auto d = static_cast<std::size_t>(f.dim);
  return {d, [f, d](const PathRecord& r, std::span<double> out) {
            Point g(d);
            f.gradient(r.x_T, g);
            apply(r.J_T, g, out);
            const double w = std::exp(r.log_weight);
            for (double& v : out) v *= w;
          }};
}

Estimate estimate_expectation(const Potential& p, const Perturbation& a, const SdeConfig& cfg, Variant variant,
                              const Payoff& payoff) {
  const StepPlan plan = plan_steps(cfg);
  const Point x0 = origin_or(cfg, p.dim());
  return accumulate_paths(cfg.n_paths, payoff.width, [&](std::size_t id, std::span<double> out) {
    const PathRecord r = simulate_path(p, a, variant, x0, plan, cfg.seed, id);
    if (r.divergent) return false;
    payoff.eval(r, out);
    for (double v : out)
      if (!std::isfinite(v)) return false;
    return true;
  });
}

Estimate estimate_fk_gradient(const Potential& p, const Perturbation& a, const TestFunction& f, const SdeConfig& cfg) {
  if (f.dim != p.dim()) throw ParameterError("test function dimension does not match the potential");
  return estimate_expectation(p, a, cfg, Variant::perturbed, payoff_fk_gradient(f));
}

Estimate estimate_gradient_fd(const Potential& p, const SdeConfig& cfg, const TestFunction& f, double h) {
  if (!(h > 0.0)) throw ParameterError("h must satisfy h > 0");
  if (f.dim != p.dim()) throw ParameterError("test function dimension does not match the potential");
  const StepPlan plan = plan_steps(cfg);
  const Point x0 = origin_or(cfg, p.dim());
  const Perturbation id = Perturbation::identity();
  const auto d = static_cast<std::size_t>(p.dim());
  return accumulate_paths(cfg.n_paths, d, [&](std::size_t path, std::span<double> out) {
    Point xp = x0, xm = x0;
    for (std::size_t i = 0; i < d; ++i) {
      xp[i] = x0[i] + h;
      xm[i] = x0[i] - h;
      const PathRecord rp = simulate_path(p, id, Variant::plain, xp, plan, cfg.seed, path);
      const PathRecord rm = simulate_path(p, id, Variant::plain, xm, plan, cfg.seed, path);
      if (rp.divergent || rm.divergent) return false;
      out[i] = (f.value(rp.x_T) - f.value(rm.x_T)) / (2.0 * h);
      xp[i] = xm[i] = x0[i];
    }
    return true;
  });
}

}  // namespace logsob
