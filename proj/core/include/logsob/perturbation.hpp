// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "logsob/grid.hpp"
#include "logsob/linalg.hpp"
#include "logsob/potential.hpp"

namespace logsob {

enum class PerturbationFamily { identity, arctan, custom };

struct PerturbationSpec {
  PerturbationFamily family = PerturbationFamily::identity;
  double eps = 0.0;  // arctan: a(x) = exp((eps/2) arctan |x|^2)

  friend bool operator==(const PerturbationSpec&, const PerturbationSpec&) = default;
};

void validate(const PerturbationSpec& spec);

/// A sup norm together with whether it is known exactly or estimated on a grid.
struct Norm {
  double value = 0.0;
  bool exact = false;
  bool finite() const { return std::isfinite(value); }
};

struct PerturbationNorms {
  Norm sup_a;
  Norm sup_a_inv;
  Norm sup_log_grad;
};

/// Verdict of a (G) or (BM) check. Grid-based verdicts are marked heuristic.
struct ConditionReport {
  std::string name;
  bool satisfied = false;
  bool heuristic = false;
  bool exact = false;  // `sup` is a closed form rather than a grid maximum
  double sup = 0.0;
  double grid_sup = 0.0;
  double worst_offdiagonal = 0.0;  // (BM) only: max_{i != j} d_ij V_a over the grid
  std::size_t probes = 0;
  std::vector<std::string> warnings;
};

/// Positive perturbation function a and the derived fields: grad a / a,
/// Laplacian a / a, Hess log a, and psi_a = -a L(a^{-1}).
class Perturbation {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;
  using HessianFn = std::function<void(std::span<const double>, Matrix&)>;

  /// Callables on a itself (not log a). Grid norms are used.
  struct Custom {
    ValueFn value;
    GradientFn gradient;
    ValueFn laplacian;
    HessianFn log_hessian;  // optional; central differences of grad a / a otherwise
    bool is_radial = false;
    std::string name = "custom";
  };

  static Perturbation make(const PerturbationSpec& spec);
  static Perturbation identity();
  static Perturbation arctan(double eps);
  static Perturbation custom(Custom fns);

  PerturbationFamily family() const;
  const PerturbationSpec& spec() const;
  std::string name() const;
  bool is_radial() const;
  double eps() const { return spec().eps; }

  double value(std::span<const double> x) const;
  double log_value(std::span<const double> x) const;
  void log_grad(std::span<const double> x, std::span<double> out) const;
  Point log_grad(std::span<const double> x) const;
  /// Laplacian(a) / a
  double laplacian_over_a(std::span<const double> x) const;
  void log_hessian(std::span<const double> x, Matrix& out) const;

  /// psi_a(x) = Lap a / a - 2 |grad a / a|^2 - grad V . grad a / a.
  /// Throws EvaluationError carrying x when the result is not finite.
  double psi(const Potential& p, std::span<const double> x) const;

  /// Same expansion from precomputed pieces (hot path of the simulator).
  static double psi_from(double laplacian_over_a, std::span<const double> log_grad,
                         std::span<const double> grad_v);

  PerturbationNorms norms(int dim) const;

 private:
  class Model;
  class IdentityModel;
  class ArctanModel;
  class CustomModel;

  explicit Perturbation(std::shared_ptr<const Model> model);
  std::shared_ptr<const Model> model_;
};

/// (G): |grad a| / a bounded.
ConditionReport check_G(const Perturbation& a, int dim, const ProbeGrid& grid = ProbeGrid::standard());

/// (BM) for V_a = V + log a^2: off-diagonal second derivatives <= 0 and row
/// sums of Hess V_a bounded above.
ConditionReport check_BM(const Perturbation& a, const Potential& p, const ProbeGrid& grid = ProbeGrid::standard());

/// Hess V_a = Hess V + 2 Hess log a.
Matrix perturbed_hessian(const Potential& p, const Perturbation& a, std::span<const double> x);

}  // namespace logsob
