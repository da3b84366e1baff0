// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logsob/bounds.hpp"
#include "logsob/entropy.hpp"
#include "logsob/sampling.hpp"
#include "logsob/sde.hpp"
#include "logsob/test_functions.hpp"

namespace logsob {

struct NamedEstimate {
  std::string name;
  std::vector<double> mean;
  std::vector<double> std_error;
};

/// lhs vs rhs, componentwise: pass iff |lhs - rhs| <= k sigma + c dt with
/// sigma = sqrt(se_lhs^2 + se_rhs^2). One-sided comparisons require
/// lhs - rhs <= k sigma + c dt only.
struct Comparison {
  std::string lhs;
  std::string rhs;
  bool one_sided = false;
  std::vector<double> difference;
  std::vector<double> allowed;
  bool pass = false;
};

struct CheckReport {
  std::string name;
  std::vector<NamedEstimate> estimates;
  std::vector<Comparison> comparisons;
  double k = 3.0;
  double c = 0.0;
  std::string tolerance_model;
  bool pass = false;
  std::size_t n_paths = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;

  const NamedEstimate* find(const std::string& name) const;
};

/// Compares E[J grad f(X_T)] (plain), E[R J grad f(X_{T,a})] (perturbed)
/// and common-random-number finite differences, pairwise with k = 3 and
/// c = 5, plus against `reference` when given. Throws PreconditionError
/// when a fails (G).
CheckReport representation_check(const Potential& p, const Perturbation& a, const TestFunction& f,
                                 const SdeConfig& cfg, std::optional<Point> reference = std::nullopt,
                                 double fd_step = 1e-2);

/// E[R_{t,a}] = 1 within 3 sigma at every checkpoint of cfg (the horizon when
/// none is given). Throws PreconditionError when a fails (G).
CheckReport martingale_check(const Potential& p, const Perturbation& a, const SdeConfig& cfg);

/// P_{t,a} f <= P_t f + 3 sigma from paired paths sharing their increments.
/// Requires d = 1 and f non-decreasing and positive on a 1000-point grid;
/// the monotonicity verdict for a is recorded as a note.
CheckReport monotone_comparison(const Potential& p, const Perturbation& a, const TestFunction& f,
                                const SdeConfig& cfg);

/// One-sided audit: every member of the built-in family (exponential tilts,
/// shifted tanh products, Gaussian bumps) must satisfy
/// ratio <= bound.constant + 3 sigma. Can falsify a bound, never certify it.
CheckReport lsi_audit(const Potential& p, const BoundReport& bound, const SampleSet& samples,
                      const BootstrapOptions& opt = {});

/// The audit family for dimension d.
std::vector<TestFunction> audit_family(int dim);

}  // namespace logsob
