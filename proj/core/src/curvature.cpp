// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "logsob/error.hpp"
#include "logsob/grid.hpp"
#include "logsob/parallel.hpp"

namespace logsob {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Certificate build_certificate(std::string family, double eps, int dim, double beta, bool one_dimensional) {
  Certificate c;
  c.family = std::move(family);
  c.eps = eps;
  c.dim = dim;
  c.beta = beta;
  c.one_dimensional = one_dimensional;
  const double d = dim;
  const double eb = eps * beta;
  c.coefficients = {2.0, -eps * (d + 1.0), 4.0 + eb, -eps * (d + 5.0), 2.0 - eps * eps + eb};
  if (one_dimensional) {
    // 2 rho_- gains 4t, i.e. g gains 4 (1 + t^2)^2.
    c.coefficients[0] += 4.0;
    c.coefficients[2] += 8.0;
    c.coefficients[4] += 4.0;
  }

  const RootIsolationOptions opt{c.merge_tolerance};
  c.roots = nonnegative_real_roots(c.coefficients, opt);

  const std::span<const double> g(c.coefficients);
  const double g0 = evaluate(g, 0.0);
  const bool g0_ok = g0 >= 0.0 || std::abs(g0) <= evaluation_error_bound(g, 0.0);
  bool odd_inside = false;
  for (const auto& r : c.roots)
    if (r.t > 0.0 && r.multiplicity % 2 == 1) odd_inside = true;
  c.nonneg_on_halfline = g0_ok && !odd_inside;

  c.min_value = g0;
  c.min_at = 0.0;
  const Coefficients dg = derivative(g);
  for (const auto& r : nonnegative_real_roots(dg, opt)) {
    const double v = evaluate(g, r.t);
    if (v < c.min_value) {
      c.min_value = v;
      c.min_at = r.t;
    }
  }
  c.kappa_if_valid = eps * d - 2.0 * beta;
  c.kappa_positive = c.kappa_if_valid > 0.0;
  c.verdict = c.nonneg_on_halfline && c.kappa_positive;
  return c;
}

Point radial_point(int dim, double t) {
  Point x(static_cast<std::size_t>(dim), 0.0);
  x[0] = std::sqrt(t);
  return x;
}

struct GridResult {
  double value;
  double t;
  bool unbounded;
  double t_max;
  std::size_t evaluations;
  int iterations;
};

GridResult minimize_radial(const std::function<double(double)>& f, const SearchConfig& cfg) {
  GridResult out{kInf, 0.0, false, cfg.t_max, 0, 0};
  double t_max = cfg.t_max;
  std::vector<double> t;
  std::vector<double> v;
  std::size_t best = 0;
  for (;;) {
    t = radial_log_grid(t_max, cfg.grid_points);
    v.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = f(t[i]);
    out.evaluations += t.size();
    const double m = *std::min_element(v.begin(), v.end());
    // Ties (objective flat to rounding) resolve to the smallest t.
    const double tie = 1e-13 * std::max(1.0, std::abs(m));
    best = 0;
    while (v[best] > m + tie) ++best;
    const std::size_t last = t.size() - 1;
    const bool decreasing = v[last] < v[last - 1];
    const bool near_inf = v[last] - m <= 0.01 * std::abs(m);
    if (decreasing && near_inf) {
      if (2.0 * t_max <= cfg.t_max_limit) {
        t_max *= 2.0;
        continue;
      }
      out.unbounded = true;
      out.value = -kInf;
      out.t = t_max;
      out.t_max = t_max;
      return out;
    }
    break;
  }
  out.t_max = t_max;
  out.value = v[best];
  out.t = t[best];

  // Golden-section refinement on the bracket around the best grid point.
  double lo = t[best == 0 ? 0 : best - 1];
  double hi = t[std::min(best + 1, t.size() - 1)];
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  out.evaluations += 2;
  while (hi - lo > cfg.t_tolerance && out.iterations < 500) {
    ++out.iterations;
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    }
    ++out.evaluations;
  }
  const double tc = f1 <= f2 ? x1 : x2;
  const double fc = std::min(f1, f2);
  const double tie = 1e-13 * std::max(1.0, std::abs(out.value));
  if (fc < out.value - tie) {
    out.value = fc;
    out.t = tc;
  }
  return out;
}

// Halton sequence value for index i in the given prime base.
double halton(std::size_t i, std::size_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

std::vector<std::size_t> first_primes(std::size_t n) {
  std::vector<std::size_t> primes;
  for (std::size_t k = 2; primes.size() < n; ++k) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > k) break;
      if (k % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(k);
  }
  return primes;
}

struct LocalResult {
  Point x;
  double value;
  std::size_t evaluations;
};

LocalResult nelder_mead(const std::function<double(const Point&)>& f, Point x0, double step, std::size_t max_iter) {
  const std::size_t n = x0.size();
  std::vector<Point> s(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += step;
  std::size_t evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    fv[i] = f(s[i]);
    ++evals;
  }
  std::vector<std::size_t> idx(n + 1);
  for (std::size_t it = 0; it < max_iter; ++it) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second = idx[n - 1];
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(s[i][k] - s[best][k]));
    if (std::abs(fv[worst] - fv[best]) <= 1e-13 * (1.0 + std::abs(fv[best])) && size < 1e-9) break;
    Point c(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < n; ++k) c[k] += s[i][k] / static_cast<double>(n);
    auto along = [&](double coef) {
      Point p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = c[k] + coef * (s[worst][k] - c[k]);
      return p;
    };
    Point xr = along(-1.0);
    const double fr = f(xr);
    ++evals;
    if (fr < fv[best]) {
      Point xe = along(-2.0);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        s[worst] = xe;
        fv[worst] = fe;
      } else {
        s[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      s[worst] = xr;
      fv[worst] = fr;
    } else {
      Point xc = along(fr < fv[worst] ? -0.5 : 0.5);
      const double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, fv[worst])) {
        s[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k) s[i][k] = s[best][k] + 0.5 * (s[i][k] - s[best][k]);
          fv[i] = f(s[i]);
          ++evals;
        }
      }
    }
  }
  const auto b = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {s[b], fv[b], evals};
}

}  // namespace

std::string_view to_string(CurvatureKind kind) {
  return kind == CurvatureKind::kappa ? "kappa" : "kappa_tilde";
}

std::string_view to_string(CurvatureMethod method) {
  switch (method) {
    case CurvatureMethod::radial_closed_form: return "radial_closed_form";
    case CurvatureMethod::radial_grid: return "radial_grid";
    case CurvatureMethod::full_grid: return "full_grid";
    case CurvatureMethod::polynomial_certificate: return "polynomial_certificate";
  }
  return "unknown";
}

Certificate certify_quadric(double eps, int dim) {
  if (!(eps > 0.0) || dim < 1) throw ParameterError("certify_quadric requires eps > 0 and dim >= 1");
  return build_certificate("quadric", eps, dim, 0.0, false);
}

Certificate certify_quadric_1d(double eps) {
  if (!(eps > 0.0)) throw ParameterError("certify_quadric_1d requires eps > 0");
  return build_certificate("quadric", eps, 1, 0.0, true);
}

Certificate certify_double_well(double eps, int dim, double beta) {
  if (!(eps > 0.0) || dim < 1) throw ParameterError("certify_double_well requires eps > 0 and dim >= 1");
  if (!(beta >= 0.0 && beta < 0.5)) throw ParameterError("certify_double_well requires beta in [0, 1/2)");
  return build_certificate("double_well", eps, dim, beta, false);
}

Certificate certify_double_well_1d(double eps, double beta) {
  if (!(eps > 0.0)) throw ParameterError("certify_double_well_1d requires eps > 0");
  if (!(beta >= 0.0 && beta < 0.5)) throw ParameterError("certify_double_well_1d requires beta in [0, 1/2)");
  return build_certificate("double_well", eps, 1, beta, true);
}

Certificate sharpest_certificate(bool double_well, double eps, int dim, double beta) {
  Certificate c = double_well ? certify_double_well(eps, dim, beta) : certify_quadric(eps, dim);
  if (c.verdict || dim != 1) return c;
  return double_well ? certify_double_well_1d(eps, beta) : certify_quadric_1d(eps);
}

std::optional<Certificate> certificate_for(const Potential& p, const Perturbation& a) {
  if (a.family() != PerturbationFamily::arctan) return std::nullopt;
  const auto& s = p.spec();
  if (s.family == PotentialFamily::subbotin && s.alpha == 4.0) return sharpest_certificate(false, a.eps(), s.dim, 0.0);
  if (s.family == PotentialFamily::double_well) return sharpest_certificate(true, a.eps(), s.dim, s.beta);
  return std::nullopt;
}

double curvature_objective(const Potential& p, const Perturbation& a, CurvatureKind kind, std::span<const double> x) {
  const double factor = kind == CurvatureKind::kappa ? 2.0 : 1.0;
  return factor * p.rho_minus(x) + a.psi(p, x);
}

double radial_objective(const Potential& p, const Perturbation& a, CurvatureKind kind, double t) {
  const Point x = radial_point(p.dim(), t);
  return curvature_objective(p, a, kind, x);
}

CurvatureReport curvature(const Potential& p, const Perturbation& a, CurvatureKind kind, const SearchConfig& cfg) {
  CurvatureReport r;
  r.kind = kind;
  const int dim = p.dim();
  const double factor = kind == CurvatureKind::kappa ? 2.0 : 1.0;

  if (cfg.allow_closed_form && a.family() == PerturbationFamily::identity && p.family() != PotentialFamily::custom) {
    // psi vanishes and rho_- is minimal at the origin for every built-in.
    r.method = CurvatureMethod::radial_closed_form;
    r.certified = true;
    r.value = factor * p.hessian_floor().value;
    r.argmin = Point(static_cast<std::size_t>(dim), 0.0);
    r.argmin_t = 0.0;
    return r;
  }

  auto radial = [&](double t) { return radial_objective(p, a, kind, t); };

  if (cfg.allow_certificate && kind == CurvatureKind::kappa) {
    if (auto cert = certificate_for(p, a)) {
      if (cert->nonneg_on_halfline) {
        r.method = CurvatureMethod::polynomial_certificate;
        r.certified = true;
        r.value = cert->kappa_if_valid;
        r.argmin = Point(static_cast<std::size_t>(dim), 0.0);
        r.argmin_t = 0.0;
        const auto g = minimize_radial(radial, cfg);
        r.grid_cross_check = g.value;
        r.evaluations = g.evaluations;
        r.t_max_used = g.t_max;
        r.certificate = std::move(cert);
        return r;
      }
      r.notes.push_back("polynomial certificate is negative somewhere on [0, inf); infimum estimated on the grid");
      r.certificate = std::move(cert);
    }
  }

  if (p.is_radial() && a.is_radial()) {
    const auto g = minimize_radial(radial, cfg);
    r.method = CurvatureMethod::radial_grid;
    r.value = g.value;
    r.argmin_t = g.t;
    r.argmin = radial_point(dim, g.t);
    r.unbounded_below = g.unbounded;
    r.evaluations = g.evaluations;
    r.t_max_used = g.t_max;
    r.refinement_iterations = g.iterations;
    if (g.unbounded) r.notes.push_back("objective still decreasing at t_max limit; reported as -inf");
    return r;
  }

  // General case: multistart Nelder-Mead from Halton points in a box.
  r.method = CurvatureMethod::full_grid;
  const auto d = static_cast<std::size_t>(dim);
  const auto primes = first_primes(d);
  std::vector<LocalResult> results(cfg.starts);
  auto objective = [&](const Point& x) {
    const double v = curvature_objective(p, a, kind, x);
    return std::isfinite(v) ? v : kInf;
  };
  parallel_for(cfg.starts, [&](std::size_t s) {
    Point x0(d);
    for (std::size_t k = 0; k < d; ++k) x0[k] = cfg.box * (2.0 * halton(s + 1, primes[k]) - 1.0);
    results[s] = nelder_mead(objective, x0, 0.25 * cfg.box, 400 * d + 400);
  });
  std::size_t best = 0;
  for (std::size_t s = 0; s < results.size(); ++s) {
    r.evaluations += results[s].evaluations;
    if (results[s].value < results[best].value) best = s;
  }
  r.value = results[best].value;
  r.argmin = results[best].x;
  r.argmin_t = dot(r.argmin, r.argmin);
  if (std::sqrt(r.argmin_t) > 1e3 * cfg.box) {
    r.unbounded_below = true;
    r.value = -kInf;
    r.notes.push_back("local descent escaped far outside the start box; reported as -inf");
  }
  return r;
}

CurvatureReport kappa(const Potential& p, const Perturbation& a, const SearchConfig& cfg) {
  return curvature(p, a, CurvatureKind::kappa, cfg);
}

CurvatureReport kappa_tilde(const Potential& p, const Perturbation& a, const SearchConfig& cfg) {
  return curvature(p, a, CurvatureKind::kappa_tilde, cfg);
}

}  // namespace logsob
