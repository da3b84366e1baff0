// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logsob/error.hpp"
#include "logsob/parallel.hpp"
#include "logsob/rng.hpp"

namespace logsob {

namespace {

constexpr std::size_t kIntervals = std::size_t{1} << 14;
constexpr double kTailMass = 1e-12;
constexpr double kRadiusLimit = 1e6;
// Slot reserved for the accept/reject uniform so it never collides with
// the normal pairs of a proposal.
constexpr std::uint32_t kAcceptSlot = 0xFFFFu;

double log_radial_density(const Potential& p, double r) {
  const int d = p.dim();
  if (r == 0.0) return d == 1 ? -p.value(Point(1, 0.0)) : -std::numeric_limits<double>::infinity();
  Point x(static_cast<std::size_t>(d), 0.0);
  x[0] = r;
  return (d - 1) * std::log(r) - p.value(x);
}

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = a + h * static_cast<double>(i);
    s += f(l) + 4.0 * f(l + 0.5 * h) + f(l + h);
  }
  return s * h / 6.0;
}

}  // namespace

std::string_view to_string(SampleMethod m) { return m == SampleMethod::radial_exact ? "radial" : "mala"; }

RadialSampler::RadialSampler(const Potential& p) : p_(p) {
  if (!p.is_radial()) throw PreconditionError("is_radial", "radial_exact sampling requires a radial potential");

  // Reference level: max of the log density on a coarse geometric scan.
  log_ref_ = -std::numeric_limits<double>::infinity();
  for (double r = 1e-3; r <= kRadiusLimit; r *= 1.1) log_ref_ = std::max(log_ref_, log_radial_density(p, r));
  log_ref_ = std::max(log_ref_, log_radial_density(p, 0.0));
  if (!std::isfinite(log_ref_)) throw Error("radial density is not finite");

  const std::function<double(double)> f = [this](double r) { return density(r); };
  double r_max = 1.0;
  for (;; r_max *= 2.0) {
    if (r_max > kRadiusLimit) throw Error("density r^{d-1} e^{-V} is not normalizable: tail mass does not converge");
    if (log_radial_density(p, r_max) - log_ref_ > std::log(kTailMass) - 10.0) continue;
    const double body = simpson(f, 0.0, r_max, kIntervals);
    const double tail = simpson(f, r_max, 2.0 * r_max, kIntervals / 16);
    if (tail <= kTailMass * body) break;
  }
  r_max_ = r_max;

  nodes_.resize(kIntervals + 1);
  cumulative_.assign(kIntervals + 1, 0.0);
  const double h = r_max / static_cast<double>(kIntervals);
  for (std::size_t i = 0; i <= kIntervals; ++i) nodes_[i] = h * static_cast<double>(i);
  nodes_.back() = r_max;
  for (std::size_t i = 0; i < kIntervals; ++i) cumulative_[i + 1] = cumulative_[i] + partial(i, nodes_[i + 1]);
}

double RadialSampler::density(double r) const { return std::exp(log_radial_density(p_, r) - log_ref_); }

double RadialSampler::partial(std::size_t i, double r) const {
  const double l = nodes_[i];
  return (r - l) / 6.0 * (density(l) + 4.0 * density(0.5 * (l + r)) + density(r));
}

double RadialSampler::cdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= r_max_) return 1.0;
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(r / r_max_ * kIntervals), kIntervals - 1);
  return (cumulative_[i] + partial(i, r)) / cumulative_.back();
}

double RadialSampler::radius(double u) const {
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  std::size_t i = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, kIntervals) - 1;
  double lo = nodes_[i], hi = nodes_[i + 1];
  const double need = target - cumulative_[i];
  const double width = cumulative_[i + 1] - cumulative_[i];
  double r = width > 0.0 ? lo + (hi - lo) * std::clamp(need / width, 0.0, 1.0) : lo;
  // Safeguarded Newton on the in-interval Simpson integral.
  for (int it_n = 0; it_n < 8; ++it_n) {
    const double resid = partial(i, r) - need;
    if (resid > 0.0)
      hi = r;
    else
      lo = r;
    const double fr = density(r);
    double next = fr > 0.0 ? r - resid / fr : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-15 * std::max(1.0, r)) {
      r = next;
      break;
    }
    r = next;
  }
  return r;
}

SampleSet sample_measure(const Potential& p, std::size_t n, SampleMethod method, std::uint64_t seed,
                         const MalaOptions& opt) {
  if (n == 0) throw ParameterError("n must satisfy n >= 1");
  const auto d = static_cast<std::size_t>(p.dim());
  SampleSet out;
  out.dim = p.dim();
  out.method = method;
  out.data.resize(n * d);
  const NormalSource rng(seed);

  if (method == SampleMethod::radial_exact) {
    const RadialSampler radial(p);
    out.r_max = radial.r_max();
    parallel_for((n + 1023) / 1024, [&](std::size_t c) {
      Point z(d);
      for (std::size_t i = c * 1024; i < std::min(n, (c + 1) * 1024); ++i) {
        const auto u = rng.uniforms(i, 0, 0);
        const double r = radial.radius(u[0]);
        double* x = out.data.data() + i * d;
        if (d == 1) {
          x[0] = u[1] < 0.5 ? -r : r;
          continue;
        }
        rng.normals(i, 1, z);
        const double nz = norm2(z);  // > 0: Box-Muller radii are strictly positive
        for (std::size_t k = 0; k < d; ++k) x[k] = r * z[k] / nz;
      }
    });
    return out;
  }

  if (opt.chains == 0 || opt.thin == 0) throw ParameterError("mala requires chains >= 1 and thin >= 1");
  const std::size_t per_chain = (n + opt.chains - 1) / opt.chains;
  std::vector<double> steps(opt.chains), accept(opt.chains);
  parallel_for(opt.chains, [&](std::size_t c) {
    Point x(d, 0.0), y(d), gx(d), gy(d), z(d);
    double vx = p.value(x);
    p.gradient(x, gx);
    double tau = opt.initial_step;
    std::uint64_t iter = 0;
    std::size_t window_acc = 0, window = 0, kept_acc = 0, kept_total = 0;

    auto step = [&]() {
      rng.normals(c, iter, z);
      const double s = std::sqrt(2.0 * tau);
      for (std::size_t k = 0; k < d; ++k) y[k] = x[k] - tau * gx[k] + s * z[k];
      const double vy = p.value(y);
      p.gradient(y, gy);
      // log q(x | y) - log q(y | x) with q(b | a) = N(a - tau grad V(a), 2 tau).
      double fwd = 0.0, bwd = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double a1 = y[k] - x[k] + tau * gx[k];
        const double a2 = x[k] - y[k] + tau * gy[k];
        fwd += a1 * a1;
        bwd += a2 * a2;
      }
      const double log_alpha = (vx - vy) + (fwd - bwd) / (4.0 * tau);
      const double u = rng.uniforms(c, iter, kAcceptSlot)[0];
      ++iter;
      if (std::isfinite(log_alpha) && std::log(u) < log_alpha) {
        std::swap(x, y);
        std::swap(gx, gy);
        vx = vy;
        return true;
      }
      return false;
    };

    for (std::size_t b = 0; b < opt.burn_in; ++b) {
      window_acc += step() ? 1 : 0;
      if (++window == 100) {
        const double rate = static_cast<double>(window_acc) / 100.0;
        if (rate > opt.target_high) tau *= 1.25;
        if (rate < opt.target_low) tau *= 0.8;
        window = window_acc = 0;
      }
    }
    const std::size_t first = c * per_chain;
    const std::size_t last = std::min(n, first + per_chain);
    for (std::size_t i = first; i < last; ++i) {
      for (std::size_t t = 0; t < opt.thin; ++t) {
        kept_acc += step() ? 1 : 0;
        ++kept_total;
      }
      std::copy(x.begin(), x.end(), out.data.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
    steps[c] = tau;
    accept[c] = kept_total ? static_cast<double>(kept_acc) / static_cast<double>(kept_total) : 0.0;
  });
  double acc = 0.0, tau = 0.0;
  for (std::size_t c = 0; c < opt.chains; ++c) {
    acc += accept[c];
    tau += steps[c];
  }
  out.acceptance = acc / static_cast<double>(opt.chains);
  out.step = tau / static_cast<double>(opt.chains);
  return out;
}

}  // namespace logsob
