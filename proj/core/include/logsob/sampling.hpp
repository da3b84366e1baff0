// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "logsob/potential.hpp"

namespace logsob {

enum class SampleMethod { radial_exact, mala };

std::string_view to_string(SampleMethod m);

/// n points of R^d stored row-major.
struct SampleSet {
  int dim = 1;
  std::vector<double> data;
  SampleMethod method = SampleMethod::radial_exact;
  double acceptance = 1.0;  // mala only
  double step = 0.0;        // mala only: tuned step size
  double r_max = 0.0;       // radial_exact only: truncation radius

  std::size_t size() const { return data.size() / static_cast<std::size_t>(dim); }
  std::span<const double> point(std::size_t i) const {
    return {data.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
};

/// Radial inverse-CDF sampler for radial potentials. The radius density
/// r^{d-1} e^{-V(r)} is integrated by composite Simpson on 2^14 intervals
/// over [0, r_max], with r_max doubled until the tail beyond it carries
/// relative mass below 1e-12. Throws Error when the tail does not converge.
class RadialSampler {
 public:
  explicit RadialSampler(const Potential& p);

  double r_max() const { return r_max_; }
  /// Radius at CDF level u in (0, 1).
  double radius(double u) const;
  /// Normalized radial CDF at r.
  double cdf(double r) const;

 private:
  double density(double r) const;
  double partial(std::size_t i, double r) const;

  Potential p_;
  double log_ref_ = 0.0;
  double r_max_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> cumulative_;
};

struct MalaOptions {
  std::size_t burn_in = 10000;
  std::size_t thin = 10;
  std::size_t chains = 8;
  double initial_step = 0.1;
  double target_low = 0.5;
  double target_high = 0.7;
};

/// Draws n points from mu proportional to e^{-V}. Deterministic in
/// (seed, n, method) for any worker count.
SampleSet sample_measure(const Potential& p, std::size_t n, SampleMethod method, std::uint64_t seed,
                         const MalaOptions& mala = {});

}  // namespace logsob
