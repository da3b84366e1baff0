// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/verify.hpp"

#include <algorithm>
#include <cmath>

#include "logsob/config.hpp"
#include "logsob/error.hpp"

namespace logsob {

namespace {

NamedEstimate named(std::string name, const Estimate& e) { return {std::move(name), e.mean, e.std_error}; }

Comparison compare(const NamedEstimate& l, const NamedEstimate& r, double k, double c, double dt, bool one_sided) {
  Comparison out;
  out.lhs = l.name;
  out.rhs = r.name;
  out.one_sided = one_sided;
  out.pass = true;
  for (std::size_t i = 0; i < l.mean.size(); ++i) {
    const double diff = l.mean[i] - r.mean[i];
    const double sigma = std::hypot(l.std_error[i], r.std_error[i]);
    const double allowed = k * sigma + c * dt;
    out.difference.push_back(diff);
    out.allowed.push_back(allowed);
    if (!((one_sided ? diff : std::abs(diff)) <= allowed)) out.pass = false;
  }
  return out;
}

void finish(CheckReport& r) {
  r.pass = std::all_of(r.comparisons.begin(), r.comparisons.end(), [](const auto& c) { return c.pass; });
}

ConditionReport require_G(const Perturbation& a, int dim) {
  auto g = check_G(a, dim);
  if (!g.satisfied)
    throw PreconditionError("(G)", "perturbation " + a.name() + " violates (G): |grad a| / a is not bounded");
  return g;
}

std::string tolerance_text(double k, double c) {
  return "|lhs - rhs| <= " + format_number(k) + " * sigma_combined + " + format_number(c) + " * dt";
}

}  // namespace

const NamedEstimate* CheckReport::find(const std::string& n) const {
  for (const auto& e : estimates)
    if (e.name == n) return &e;
  return nullptr;
}

CheckReport representation_check(const Potential& p, const Perturbation& a, const TestFunction& f,
                                 const SdeConfig& cfg, std::optional<Point> reference, double fd_step) {
  if (f.dim != p.dim()) throw ParameterError("test function dimension does not match the potential");
  const auto g = require_G(a, p.dim());
  const StepPlan plan = plan_steps(cfg);

  CheckReport r;
  r.name = "representation";
  r.k = 3.0;
  r.c = 5.0;
  r.tolerance_model = tolerance_text(r.k, r.c);
  r.n_paths = cfg.n_paths;
  r.dt = plan.dt;
  r.seed = cfg.seed;
  if (g.heuristic) r.notes.push_back("(G) verified on a probe grid only");

  const auto plain = named("tangent", estimate_expectation(p, a, cfg, Variant::plain, payoff_tangent_gradient(f)));
  const auto weighted = named("girsanov", estimate_fk_gradient(p, a, f, cfg));
  const auto fd = named("finite_difference", estimate_gradient_fd(p, cfg, f, fd_step));
  r.estimates = {plain, weighted, fd};
  r.comparisons.push_back(compare(plain, weighted, r.k, r.c, plan.dt, false));
  r.comparisons.push_back(compare(plain, fd, r.k, r.c, plan.dt, false));
  r.comparisons.push_back(compare(weighted, fd, r.k, r.c, plan.dt, false));
  if (reference) {
    NamedEstimate ref{"reference", *reference, Point(reference->size(), 0.0)};
    for (const auto& e : {plain, weighted, fd}) r.comparisons.push_back(compare(e, ref, r.k, r.c, plan.dt, false));
    r.estimates.push_back(std::move(ref));
  }
  finish(r);
  return r;
}

CheckReport martingale_check(const Potential& p, const Perturbation& a, const SdeConfig& cfg_in) {
  require_G(a, p.dim());
  SdeConfig cfg = cfg_in;
  if (cfg.checkpoints.empty()) cfg.checkpoints = {cfg.horizon};
  const StepPlan plan = plan_steps(cfg);
  const std::size_t m = cfg.checkpoints.size();
  const Payoff weights{m, [](const PathRecord& rec, std::span<double> out) {
                         for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::exp(rec.checkpoint_log_weights[j]);
                       }};
  const Estimate est = estimate_expectation(p, a, cfg, Variant::perturbed, weights);

  CheckReport r;
  r.name = "martingale";
  r.k = 3.0;
  r.c = 0.0;
  r.tolerance_model = tolerance_text(r.k, r.c);
  r.n_paths = cfg.n_paths;
  r.dt = plan.dt;
  r.seed = cfg.seed;
  for (std::size_t j = 0; j < m; ++j) {
    NamedEstimate e{"R(t=" + format_number(cfg.checkpoints[j]) + ")", {est.mean[j]}, {est.std_error[j]}};
    r.comparisons.push_back(compare(e, NamedEstimate{"one", {1.0}, {0.0}}, r.k, r.c, plan.dt, false));
    r.estimates.push_back(std::move(e));
  }
  if (!est.valid) r.notes.push_back("divergent fraction above threshold: " + std::to_string(est.n_divergent));
  finish(r);
  if (!est.valid) r.pass = false;
  return r;
}

CheckReport monotone_comparison(const Potential& p, const Perturbation& a, const TestFunction& f,
                                const SdeConfig& cfg) {
  if (p.dim() != 1 || f.dim != 1)
    throw PreconditionError("d = 1", "monotone comparison is restricted to dimension 1");
  constexpr double lo = -10.0, hi = 10.0;
  if (!nondecreasing_on_grid(f, lo, hi)) throw PreconditionError("f non-decreasing", "f decreases on [-10, 10]");
  if (!(min_on_grid(f, lo, hi) > 0.0)) throw PreconditionError("f > 0", "f is not positive on [-10, 10]");

  CheckReport r;
  r.name = "monotone";
  r.k = 3.0;
  r.c = 0.0;
  r.tolerance_model = "P_{t,a} f - P_t f <= 3 * sigma_paired";
  const StepPlan plan = plan_steps(cfg);
  r.n_paths = cfg.n_paths;
  r.dt = plan.dt;
  r.seed = cfg.seed;

  bool a_monotone = true;
  Point x(1), g(1);
  for (int k = 0; k < 1000; ++k) {
    x[0] = lo + (hi - lo) * k / 999.0;
    a.log_grad(x, g);
    if (g[0] < 0.0) a_monotone = false;
  }
  if (!a_monotone) r.notes.push_back("a fails the non-decreasing grid check on [-10, 10]; comparison run without it");

  const Point x0 = cfg.x0.empty() ? Point(1, 0.0) : cfg.x0;
  const Estimate est = accumulate_paths(cfg.n_paths, 3, [&](std::size_t id, std::span<double> out) {
    const PathRecord pa = simulate_path(p, a, Variant::perturbed, x0, plan, cfg.seed, id);
    const PathRecord pl = simulate_path(p, a, Variant::plain, x0, plan, cfg.seed, id);
    if (pa.divergent || pl.divergent) return false;
    out[1] = f.value(pa.x_T);
    out[2] = f.value(pl.x_T);
    out[0] = out[1] - out[2];
    return true;
  });
  const NamedEstimate diff{"difference", {est.mean[0]}, {est.std_error[0]}};
  r.estimates = {NamedEstimate{"perturbed", {est.mean[1]}, {est.std_error[1]}},
                 NamedEstimate{"plain", {est.mean[2]}, {est.std_error[2]}}, diff};
  r.comparisons.push_back(compare(diff, NamedEstimate{"zero", {0.0}, {0.0}}, r.k, r.c, plan.dt, true));
  finish(r);
  if (!est.valid) r.pass = false;
  return r;
}

std::vector<TestFunction> audit_family(int dim) {
  const auto d = static_cast<std::size_t>(dim);
  std::vector<TestFunction> fam;
  for (int k = 1; k <= 8; ++k) {
    Point theta(d, 0.0);
    theta[0] = 0.2 * k;
    auto f = exp_tilt(theta);
    f.name = "exp_tilt(theta=" + format_number(theta[0]) + " e1)";
    fam.push_back(std::move(f));
  }
  if (dim > 1) {
    for (double t : {0.4, 0.8, 1.2}) {
      Point theta(d, t / std::sqrt(static_cast<double>(dim)));
      auto f = exp_tilt(theta);
      f.name = "exp_tilt(theta=" + format_number(t) + " diag)";
      fam.push_back(std::move(f));
    }
  }
  for (double s : {-1.0, 0.0, 1.0}) {
    auto f = tanh_product(dim, s);
    f.name = "tanh_product(shift=" + format_number(s) + ")";
    fam.push_back(std::move(f));
  }
  for (double shift : {0.0, 1.0}) {
    for (double w : {0.5, 1.0}) {
      Point c(d, 0.0);
      c[0] = shift;
      auto f = gaussian_bump(c, w);
      f.name = "gaussian_bump(center=" + format_number(shift) + " e1, width=" + format_number(w) + ")";
      fam.push_back(std::move(f));
    }
  }
  return fam;
}

CheckReport lsi_audit(const Potential& p, const BoundReport& bound, const SampleSet& samples,
                      const BootstrapOptions& opt) {
  if (!bound.valid) throw PreconditionError("bound.valid", "lsi_audit requires a valid bound");
  if (samples.dim != p.dim()) throw ParameterError("sample dimension does not match the potential");

  CheckReport r;
  r.name = "audit";
  r.k = 3.0;
  r.c = 0.0;
  r.tolerance_model = "ratio <= constant + 3 * sigma_bootstrap";
  r.n_paths = samples.size();
  r.seed = opt.seed;
  r.notes.push_back("one-sided audit: it can falsify a bound, never certify it");
  const NamedEstimate constant{"constant", {bound.constant}, {0.0}};
  for (const auto& f : audit_family(p.dim())) {
    const auto e = entropy_ratio(f, samples, opt);
    if (e.degenerate) {
      r.notes.push_back(f.name + ": degenerate, skipped");
      continue;
    }
    NamedEstimate est{f.name, {e.ratio}, {e.ratio_se}};
    r.comparisons.push_back(compare(est, constant, r.k, r.c, 0.0, true));
    r.estimates.push_back(std::move(est));
  }
  r.estimates.push_back(constant);
  finish(r);
  return r;
}

}  // namespace logsob
