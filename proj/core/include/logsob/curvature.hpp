// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logsob/linalg.hpp"
#include "logsob/perturbation.hpp"
#include "logsob/polynomial.hpp"
#include "logsob/potential.hpp"

namespace logsob {

enum class CurvatureKind {
  kappa,        // inf 2 rho_-(Hess V) + psi_a
  kappa_tilde,  // inf rho_-(Hess V) + psi_a
};

enum class CurvatureMethod { radial_closed_form, radial_grid, full_grid, polynomial_certificate };

std::string_view to_string(CurvatureKind kind);
std::string_view to_string(CurvatureMethod method);

/// Degree-4 polynomial g(t) whose non-negativity on [0, inf) shows that the
/// radial curvature objective attains its infimum at t = 0.
struct Certificate {
  std::string family;  // "quadric" or "double_well"
  double eps = 0.0;
  int dim = 1;
  double beta = 0.0;
  std::array<double, 5> coefficients{};  // c4, c3, c2, c1, c0
  std::vector<RealRoot> roots;           // real roots in [0, inf)
  bool nonneg_on_halfline = false;
  bool kappa_positive = false;
  bool verdict = false;  // nonneg_on_halfline && kappa_positive
  double kappa_if_valid = 0.0;
  double merge_tolerance = 1e-8;
  double min_value = 0.0;  // min of g over its critical points in [0, inf) and t = 0
  double min_at = 0.0;
  bool one_dimensional = false;  // uses the d = 1 Hessian 3t (- beta) instead of t (- beta)
};

/// g(t) = 2t^4 - eps(d+1)t^3 + 4t^2 - eps(d+5)t + 2 - eps^2, kappa = eps d.
Certificate certify_quadric(double eps, int dim);

/// g(t) = 2t^4 - eps(d+1)t^3 + (4 + eps beta)t^2 - eps(d+5)t + 2 - eps^2 + eps beta,
/// kappa = eps d - 2 beta (also requires eps > 2 beta / d).
Certificate certify_double_well(double eps, int dim, double beta);

/// d = 1 variants. There Hess V is the scalar 3t (- beta), so the generic g
/// gains 4(1 + t^2)^2; same kappa.
Certificate certify_quadric_1d(double eps);
Certificate certify_double_well_1d(double eps, double beta);

/// The generic certificate, or in d = 1 the sharper one when the generic fails.
Certificate sharpest_certificate(bool double_well, double eps, int dim, double beta);

struct SearchConfig {
  double t_max = 1e4;
  std::size_t grid_points = 8192;
  double t_tolerance = 1e-10;
  double t_max_limit = 1e8;
  std::size_t starts = 64;  // full-grid multistart
  double box = 4.0;         // starts drawn in [-box, box]^d
  bool allow_closed_form = true;
  bool allow_certificate = true;
};

struct CurvatureReport {
  CurvatureKind kind = CurvatureKind::kappa;
  double value = 0.0;
  Point argmin;
  double argmin_t = 0.0;  // |argmin|^2
  CurvatureMethod method = CurvatureMethod::radial_grid;
  bool certified = false;
  bool unbounded_below = false;
  // Diagnostics.
  std::size_t evaluations = 0;
  double t_max_used = 0.0;
  int refinement_iterations = 0;
  std::optional<Certificate> certificate;
  std::optional<double> grid_cross_check;  // grid value when a certificate was used
  std::vector<std::string> notes;
};

/// Pointwise objective 2 rho_-(x) + psi_a(x) (or with factor 1 for kappa_tilde).
double curvature_objective(const Potential& p, const Perturbation& a, CurvatureKind kind, std::span<const double> x);

/// Objective as a function of t = |x|^2, evaluated at sqrt(t) e_1.
double radial_objective(const Potential& p, const Perturbation& a, CurvatureKind kind, double t);

CurvatureReport kappa(const Potential& p, const Perturbation& a, const SearchConfig& cfg = {});
CurvatureReport kappa_tilde(const Potential& p, const Perturbation& a, const SearchConfig& cfg = {});
CurvatureReport curvature(const Potential& p, const Perturbation& a, CurvatureKind kind, const SearchConfig& cfg = {});

/// The certificate matching (p, a) when one exists: arctan perturbation on
/// subbotin(4) or double_well.
std::optional<Certificate> certificate_for(const Potential& p, const Perturbation& a);

}  // namespace logsob
