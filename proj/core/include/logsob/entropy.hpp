// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "logsob/sampling.hpp"
#include "logsob/test_functions.hpp"

namespace logsob {

/// Plug-in estimates of Ent(f^2) and int |grad f|^2 under the empirical
/// measure, with bootstrap standard errors.
struct EntropyEstimate {
  double entropy = 0.0;
  double dirichlet = 0.0;
  double ratio = 0.0;  // entropy / dirichlet; 0 when degenerate
  double entropy_se = 0.0;
  double dirichlet_se = 0.0;
  double ratio_se = 0.0;
  std::size_t n_samples = 0;
  bool degenerate = false;  // entropy and Dirichlet energy both vanish
};

struct BootstrapOptions {
  std::size_t resamples = 200;
  std::uint64_t seed = 0;
};

/// Throws EstimationError when the Dirichlet energy vanishes while the
/// entropy does not, and EvaluationError on a non-finite evaluation.
EntropyEstimate entropy_ratio(const TestFunction& f, const SampleSet& samples, const BootstrapOptions& opt = {});

}  // namespace logsob
