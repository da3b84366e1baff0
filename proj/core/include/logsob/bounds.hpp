// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logsob/curvature.hpp"
#include "logsob/perturbation.hpp"
#include "logsob/potential.hpp"

namespace logsob {

enum class BoundMethod { feynman_kac, feynman_kac_monotone, bakry_emery, holley_stroock };

std::string_view to_string(BoundMethod method);

struct Precondition {
  std::string name;
  bool satisfied = false;
  bool heuristic = false;
  std::string detail;
};

struct BoundInputs {
  std::string potential;
  std::string perturbation;
  std::optional<double> eps;
  int dim = 1;
  std::optional<double> beta;
};

/// An upper bound on the log-Sobolev constant. `constant` is +inf exactly
/// when `valid` is false. `certified` means every verdict behind the report
/// is exact (closed form or polynomial certificate), whatever its outcome.
struct BoundReport {
  BoundMethod method = BoundMethod::feynman_kac;
  double constant = 0.0;
  bool valid = false;
  bool certified = false;
  std::vector<Precondition> preconditions;
  BoundInputs inputs;
  std::optional<CurvatureReport> curvature;
  double rho = 0.0;  // Hessian floor used by bakry_emery / holley_stroock
  std::string scope = "all smooth compactly supported f";
  std::vector<std::string> notes;

  const Precondition* find(std::string_view name) const;
};

/// 4 ||a|| ||a^{-1}|| / kappa_a.
BoundReport fk_bound(const Potential& p, const Perturbation& a, const SearchConfig& cfg = {});

/// 2 / kappa_tilde_a, restricted to d = 1 and non-decreasing a; the bound
/// covers non-decreasing positive test functions only.
BoundReport fk_mono_bound(const Potential& p, const Perturbation& a, const SearchConfig& cfg = {});

/// 2 / rho with rho = inf rho_-(Hess V).
BoundReport bakry_emery_bound(const Potential& p);

/// ||a||^4 ||a^{-1}||^4 * 2 / rho_a with rho_a = inf rho_-(Hess V_a).
BoundReport holley_stroock_bound(const Potential& p, const Perturbation& a);

enum class CertifiedFamily { quadric, double_well };

struct EpsilonChoice {
  double eps = 0.0;
  BoundReport report;
  Certificate certificate;
  /// False when the canonical eps failed its certificate and a smaller
  /// certified eps was searched for instead.
  bool canonical = true;
  bool grid_confirmed = false;  // eps is a minimiser of the bound on a 1024-point eps grid
};

/// Largest admissible eps for the arctan family and the resulting FK bound.
/// quadric: eps = 8 / (3 sqrt3 (d+1)); double_well: eps = 2 / (d+1).
EpsilonChoice optimize_epsilon(CertifiedFamily family, int dim, double beta = 0.0);

/// Dimension-free envelope: 3 e sqrt3 (quadric) or 4e / (1 - 2 beta).
double envelope(CertifiedFamily family, double beta = 0.0);

/// Closed-form optimized bounds as functions of d.
double quadric_closed_form_bound(int dim);
double double_well_closed_form_bound(int dim, double beta);

struct SweepRow {
  int dim = 1;
  double eps = 0.0;
  double kappa = 0.0;
  double bound = 0.0;
  double envelope = 0.0;
  bool valid = false;
  bool certified = false;
};

struct SweepTable {
  CertifiedFamily family = CertifiedFamily::quadric;
  double beta = 0.0;
  std::vector<SweepRow> rows;
  bool all_within_envelope = true;
};

/// One row per dimension, ordered as given. Throws ParameterError on an
/// empty range.
SweepTable dimension_sweep(CertifiedFamily family, std::span<const int> dims, double beta = 0.0);

}  // namespace logsob
