// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "logsob/linalg.hpp"
#include "logsob/perturbation.hpp"
#include "logsob/potential.hpp"
#include "logsob/test_functions.hpp"

namespace logsob {

/// plain: dX = sqrt2 dB - grad V dt. perturbed: drift grad V_a = grad V + 2 grad a / a.
enum class Variant { plain, perturbed };

std::string_view to_string(Variant v);

struct SdeConfig {
  double dt = 1e-3;
  double horizon = 1.0;
  std::size_t n_paths = 1000;
  std::uint64_t seed = 0;
  Point x0;                          // empty means the origin
  std::vector<double> checkpoints;  // times in (0, horizon] at which log R is recorded
};

/// Step count and the step actually used: dt shrinks so that
/// steps * dt == horizon. Throws ParameterError on an invalid config.
struct StepPlan {
  std::size_t steps = 0;
  double dt = 0.0;
  std::vector<std::size_t> checkpoint_steps;
};
StepPlan plan_steps(const SdeConfig& cfg);

struct PathRecord {
  std::size_t id = 0;
  Point x_T;
  Matrix J_T;                 // tangent flow, J_{k+1} = J_k (I - dt Hess V(X_k))
  double log_weight = 0.0;    // log a(X_T) - log a(x0) - int psi_a
  double log_weight_ito = 0.0;  // sqrt2 int (grad a / a) . dB - int |grad a / a|^2
  double psi_integral = 0.0;  // trapezoid rule on step values
  bool divergent = false;     // |X| > 1e8 or a non-finite state
  std::vector<double> checkpoint_log_weights;
};

/// Paths with |X| beyond this are dropped as divergent.
inline constexpr double kDivergenceRadius = 1e8;
/// Estimates are flagged invalid above this divergent fraction.
inline constexpr double kMaxDivergentFraction = 1e-3;

/// Simulates path `id`; its normals are keyed by (seed, id, step, coordinate),
/// so a path can be re-run from a different x0 with identical increments.
PathRecord simulate_path(const Potential& p, const Perturbation& a, Variant variant, std::span<const double> x0,
                         const StepPlan& plan, std::uint64_t seed, std::size_t id);

/// All n_paths records, ordered by id. Bit-identical for any worker count.
std::vector<PathRecord> simulate(const Potential& p, const Perturbation& a, const SdeConfig& cfg, Variant variant);

struct Estimate {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::size_t n_valid = 0;
  std::size_t n_divergent = 0;
  bool valid = false;  // divergent fraction within kMaxDivergentFraction

  double scalar() const { return mean.at(0); }
  double scalar_error() const { return std_error.at(0); }
};

/// Writes the sample for path `id` into `out` and returns false when the
/// path diverged. Samples are reduced in fixed-size chunks merged in id
/// order, so the result does not depend on the worker count.
using PathSampler = std::function<bool(std::size_t id, std::span<double> out)>;
Estimate accumulate_paths(std::size_t n_paths, std::size_t width, const PathSampler& sample);

/// A path functional with `width` outputs.
struct Payoff {
  std::size_t width = 1;
  std::function<void(const PathRecord&, std::span<double>)> eval;
};

Payoff payoff_value(const TestFunction& f);                // f(X_T)
Payoff payoff_weighted_value(const TestFunction& f);       // R f(X_T)
Payoff payoff_weight();                                    // R
Payoff payoff_tangent_gradient(const TestFunction& f);     // J grad f(X_T)
Payoff payoff_fk_gradient(const TestFunction& f);          // R J grad f(X_T)

/// Throws EstimationError when fewer than two paths are valid.
Estimate estimate_expectation(const Potential& p, const Perturbation& a, const SdeConfig& cfg, Variant variant,
                              const Payoff& payoff);

/// E[R J grad f(X_{T,a})] on perturbed paths.
Estimate estimate_fk_gradient(const Potential& p, const Perturbation& a, const TestFunction& f, const SdeConfig& cfg);

/// Central differences of E f(X_T^x) in x0 with common random numbers.
Estimate estimate_gradient_fd(const Potential& p, const SdeConfig& cfg, const TestFunction& f, double h);

}  // namespace logsob
