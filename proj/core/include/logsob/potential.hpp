// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "logsob/linalg.hpp"

namespace logsob {

enum class PotentialFamily { gaussian, subbotin, double_well, custom };

/// Parameters of a built-in potential family. Unused parameters keep their
/// defaults and are ignored.
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::gaussian;
  int dim = 1;
  double rho = 1.0;    // gaussian: V = rho |x|^2 / 2
  double alpha = 4.0;  // subbotin: V = |x|^alpha / alpha
  double beta = 0.25;  // double_well: V = |x|^4 / 4 - beta |x|^2 / 2

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

/// Throws ParameterError naming the violated constraint.
void validate(const PotentialSpec& spec);

/// inf_x rho_-(Hess V(x)), either in closed form or from a probe grid.
struct HessianFloor {
  double value;
  bool exact;
};

/// A smooth potential V on R^d with exact derivative evaluators.
///
/// Values are immutable and cheap to copy; all evaluators are const and safe
/// for concurrent use.
class Potential {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;
  using HessianFn = std::function<void(std::span<const double>, Matrix&)>;

  struct Custom {
    int dim = 1;
    ValueFn value;
    GradientFn gradient;
    HessianFn hessian;
    bool is_radial = false;
    std::string name = "custom";
  };

  static Potential make(const PotentialSpec& spec);
  static Potential gaussian(int dim, double rho);
  static Potential subbotin(int dim, double alpha);
  static Potential double_well(int dim, double beta);
  static Potential custom(Custom fns);

  int dim() const;
  PotentialFamily family() const;
  /// Parameters for built-ins; for custom potentials only `family` and `dim`
  /// are meaningful.
  const PotentialSpec& spec() const;
  std::string name() const;
  bool is_radial() const;

  double value(std::span<const double> x) const;
  void gradient(std::span<const double> x, std::span<double> out) const;
  Point gradient(std::span<const double> x) const;
  /// `out` is resized to d x d when needed.
  void hessian(std::span<const double> x, Matrix& out) const;
  Matrix hessian(std::span<const double> x) const;

  /// Smallest eigenvalue of the Hessian at x. Radial built-ins use their
  /// closed form; everything else goes through the Jacobi eigensolver.
  double rho_minus(std::span<const double> x) const;
  double rho_minus_eigensolve(std::span<const double> x) const;

  /// rho_-(Hess V) as a function of t = |x|^2 (built-ins only).
  std::optional<double> radial_rho_minus(double t) const;

  HessianFloor hessian_floor() const;

 private:
  class Model;
  class GaussianModel;
  class SubbotinModel;
  class DoubleWellModel;
  class CustomModel;

  explicit Potential(std::shared_ptr<const Model> model);
  std::shared_ptr<const Model> model_;
};

}  // namespace logsob
