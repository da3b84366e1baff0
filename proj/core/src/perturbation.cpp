// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "logsob/config.hpp"
#include "logsob/error.hpp"

namespace logsob {

namespace {

double squared_norm(std::span<const double> x) {
  double t = 0.0;
  for (double v : x) t += v * v;
  return t;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void validate(const PerturbationSpec& spec) {
  if (spec.family == PerturbationFamily::arctan && !(spec.eps > 0.0 && std::isfinite(spec.eps)))
    throw ParameterError("arctan perturbation requires eps > 0");
}

class Perturbation::Model {
 public:
  explicit Model(PerturbationSpec spec) : spec_(spec) {}
  virtual ~Model() = default;
  virtual double value(std::span<const double> x) const { return std::exp(log_value(x)); }
  virtual double log_value(std::span<const double> x) const = 0;
  virtual void log_grad(std::span<const double> x, std::span<double> out) const = 0;
  virtual double laplacian_over_a(std::span<const double> x) const = 0;
  virtual void log_hessian(std::span<const double> x, Matrix& out) const = 0;
  virtual bool is_radial() const { return true; }
  virtual std::string name() const { return render(spec_); }
  virtual PerturbationNorms norms(int dim) const = 0;

  const PerturbationSpec& spec() const { return spec_; }

 protected:
  PerturbationSpec spec_;
};

class Perturbation::IdentityModel final : public Perturbation::Model {
 public:
  IdentityModel() : Model(PerturbationSpec{}) {}
  double value(std::span<const double>) const override { return 1.0; }
  double log_value(std::span<const double>) const override { return 0.0; }
  void log_grad(std::span<const double>, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
  }
  double laplacian_over_a(std::span<const double>) const override { return 0.0; }
  void log_hessian(std::span<const double>, Matrix& out) const override {
    std::fill(out.data().begin(), out.data().end(), 0.0);
  }
  PerturbationNorms norms(int) const override { return {{1.0, true}, {1.0, true}, {0.0, true}}; }
};

// a(x) = exp((eps/2) arctan t), t = |x|^2. With u = log a:
//   grad u = eps x / (1 + t^2)
//   Lap u  = eps (d + (d - 4) t^2) / (1 + t^2)^2
//   Hess u = eps (I / (1 + t^2) - 4 t x x^T / (1 + t^2)^2)
class Perturbation::ArctanModel final : public Perturbation::Model {
 public:
  using Model::Model;
  double log_value(std::span<const double> x) const override { return 0.5 * spec_.eps * std::atan(squared_norm(x)); }
  void log_grad(std::span<const double> x, std::span<double> out) const override {
    const double t = squared_norm(x);
    const double s = spec_.eps / (1.0 + t * t);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
  }
  double laplacian_over_a(std::span<const double> x) const override {
    const double t = squared_norm(x);
    const double d = static_cast<double>(x.size());
    const double q = 1.0 + t * t;
    const double e = spec_.eps;
    return (e * (d + (d - 4.0) * t * t) + e * e * t) / (q * q);
  }
  void log_hessian(std::span<const double> x, Matrix& out) const override {
    const double t = squared_norm(x);
    const double q = 1.0 + t * t;
    const double s = spec_.eps / q;
    const double c = -4.0 * spec_.eps * t / (q * q);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) out(i, j) = c * x[i] * x[j] + (i == j ? s : 0.0);
  }
  PerturbationNorms norms(int) const override {
    // sqrt(t) / (1 + t^2) peaks at t = 1/sqrt(3) with value (3/4) 3^{-1/4}.
    const double peak = 0.75 * std::pow(3.0, -0.25);
    return {{std::exp(spec_.eps * std::numbers::pi / 4.0), true}, {1.0, true}, {spec_.eps * peak, true}};
  }
};

class Perturbation::CustomModel final : public Perturbation::Model {
 public:
  explicit CustomModel(Custom fns) : Model(PerturbationSpec{PerturbationFamily::custom, 0.0}), fns_(std::move(fns)) {}
  double value(std::span<const double> x) const override {
    const double a = fns_.value(x);
    if (!(a > 0.0)) throw EvaluationError("perturbation must be positive", Point(x.begin(), x.end()));
    return a;
  }
  double log_value(std::span<const double> x) const override { return std::log(value(x)); }
  void log_grad(std::span<const double> x, std::span<double> out) const override {
    const double a = value(x);
    fns_.gradient(x, out);
    for (double& g : out) g /= a;
  }
  double laplacian_over_a(std::span<const double> x) const override { return fns_.laplacian(x) / value(x); }
  void log_hessian(std::span<const double> x, Matrix& out) const override {
    if (fns_.log_hessian) {
      fns_.log_hessian(x, out);
      return;
    }
    const std::size_t d = x.size();
    const double h = 1e-5 * std::max(1.0, std::sqrt(squared_norm(x)));
    Point xp(x.begin(), x.end());
    Point xm = xp;
    Point gp(d), gm(d);
    for (std::size_t i = 0; i < d; ++i) {
      xp[i] += h;
      xm[i] -= h;
      log_grad(xp, gp);
      log_grad(xm, gm);
      for (std::size_t j = 0; j < d; ++j) out(i, j) = (gp[j] - gm[j]) / (2.0 * h);
      xp[i] = x[i];
      xm[i] = x[i];
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) out(i, j) = out(j, i) = 0.5 * (out(i, j) + out(j, i));
  }
  bool is_radial() const override { return fns_.is_radial; }
  std::string name() const override { return fns_.name; }
  PerturbationNorms norms(int dim) const override {
    double sup_a = 0.0, sup_inv = 0.0, sup_g = 0.0;
    Point g(static_cast<std::size_t>(dim));
    for (const auto& x : ProbeGrid::standard().points(dim)) {
      double a = 0.0;
      try {
        a = fns_.value(x);
        log_grad(x, g);
      } catch (const EvaluationError&) {
        return {{kInf, false}, {kInf, false}, {kInf, false}};
      }
      const double ng = norm2(g);
      sup_a = std::max(sup_a, std::isfinite(a) ? a : kInf);
      sup_inv = std::max(sup_inv, a > 0.0 ? 1.0 / a : kInf);
      sup_g = std::max(sup_g, std::isfinite(ng) ? ng : kInf);
    }
    return {{sup_a, false}, {sup_inv, false}, {sup_g, false}};
  }

 private:
  Custom fns_;
};

Perturbation::Perturbation(std::shared_ptr<const Model> model) : model_(std::move(model)) {}

Perturbation Perturbation::make(const PerturbationSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case PerturbationFamily::identity: return identity();
    case PerturbationFamily::arctan: return Perturbation(std::make_shared<ArctanModel>(spec));
    case PerturbationFamily::custom: break;
  }
  throw ParameterError("custom perturbations must be built with Perturbation::custom");
}

Perturbation Perturbation::identity() { return Perturbation(std::make_shared<IdentityModel>()); }

Perturbation Perturbation::arctan(double eps) { return make(PerturbationSpec{PerturbationFamily::arctan, eps}); }

Perturbation Perturbation::custom(Custom fns) {
  if (!fns.value || !fns.gradient || !fns.laplacian)
    throw ParameterError("custom perturbation requires value, gradient and laplacian callables");
  return Perturbation(std::make_shared<CustomModel>(std::move(fns)));
}

PerturbationFamily Perturbation::family() const { return model_->spec().family; }
const PerturbationSpec& Perturbation::spec() const { return model_->spec(); }
std::string Perturbation::name() const { return model_->name(); }
bool Perturbation::is_radial() const { return model_->is_radial(); }

double Perturbation::value(std::span<const double> x) const { return model_->value(x); }
double Perturbation::log_value(std::span<const double> x) const { return model_->log_value(x); }
void Perturbation::log_grad(std::span<const double> x, std::span<double> out) const { model_->log_grad(x, out); }

Point Perturbation::log_grad(std::span<const double> x) const {
  Point g(x.size());
  model_->log_grad(x, g);
  return g;
}

double Perturbation::laplacian_over_a(std::span<const double> x) const { return model_->laplacian_over_a(x); }

void Perturbation::log_hessian(std::span<const double> x, Matrix& out) const {
  if (out.rows() != x.size() || out.cols() != x.size()) out = Matrix(x.size(), x.size());
  model_->log_hessian(x, out);
}

double Perturbation::psi_from(double laplacian_over_a, std::span<const double> log_grad,
                              std::span<const double> grad_v) {
  double g2 = 0.0, vg = 0.0;
  for (std::size_t i = 0; i < log_grad.size(); ++i) {
    g2 += log_grad[i] * log_grad[i];
    vg += grad_v[i] * log_grad[i];
  }
  return laplacian_over_a - 2.0 * g2 - vg;
}

double Perturbation::psi(const Potential& p, std::span<const double> x) const {
  if (family() == PerturbationFamily::identity) return 0.0;
  const Point g = log_grad(x);
  const Point gv = p.gradient(x);
  const double out = psi_from(laplacian_over_a(x), g, gv);
  if (!std::isfinite(out)) throw EvaluationError("psi_a is not finite", Point(x.begin(), x.end()));
  return out;
}

PerturbationNorms Perturbation::norms(int dim) const { return model_->norms(dim); }

Matrix perturbed_hessian(const Potential& p, const Perturbation& a, std::span<const double> x) {
  Matrix h = p.hessian(x);
  Matrix l(x.size(), x.size());
  a.log_hessian(x, l);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) h(i, j) += 2.0 * l(i, j);
  return h;
}

namespace {

// Applies `grows_at_edge` to each probe direction of `values`.
bool any_direction_grows(const ProbeGrid& grid, int dim, const std::vector<double>& values) {
  const std::size_t n = grid.t.size();
  for (std::size_t k = 0; k < grid.directions(dim); ++k) {
    std::span<const double> slice(values.data() + k * n, n);
    if (grows_at_edge(grid.t, slice)) return true;
  }
  return false;
}

}  // namespace

ConditionReport check_G(const Perturbation& a, int dim, const ProbeGrid& grid) {
  ConditionReport r;
  r.name = "(G)";
  const auto pts = grid.points(dim);
  r.probes = pts.size();
  std::vector<double> values;
  values.reserve(pts.size());
  Point g(static_cast<std::size_t>(dim));
  for (const auto& x : pts) {
    double v;
    try {
      a.log_grad(x, g);
      v = norm2(g);
    } catch (const EvaluationError&) {
      v = kInf;
    }
    values.push_back(std::isfinite(v) ? v : kInf);
  }
  r.grid_sup = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());

  const auto norms = a.norms(dim);
  if (norms.sup_log_grad.exact) {
    r.exact = true;
    r.sup = norms.sup_log_grad.value;
    r.satisfied = norms.sup_log_grad.finite();
    return r;
  }
  r.heuristic = true;
  r.sup = r.grid_sup;
  const bool unbounded = !std::isfinite(r.grid_sup) || any_direction_grows(grid, dim, values);
  r.satisfied = !unbounded;
  if (unbounded) r.warnings.push_back("|grad a|/a grows with the probe radius; treated as unbounded");
  return r;
}

ConditionReport check_BM(const Perturbation& a, const Potential& p, const ProbeGrid& grid) {
  const int dim = p.dim();
  ConditionReport r;
  r.name = "(BM)";
  const auto pts = grid.points(dim);
  r.probes = pts.size();
  std::vector<double> row_sums;
  row_sums.reserve(pts.size());
  double worst_off = -kInf;
  for (const auto& x : pts) {
    const Matrix h = perturbed_hessian(p, a, x);
    double rs = -kInf;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < h.cols(); ++j) {
        s += h(i, j);
        if (i != j) worst_off = std::max(worst_off, h(i, j));
      }
      rs = std::max(rs, s);
    }
    row_sums.push_back(std::isfinite(rs) ? rs : kInf);
  }
  r.grid_sup = *std::max_element(row_sums.begin(), row_sums.end());
  r.sup = r.grid_sup;
  r.worst_offdiagonal = dim > 1 ? worst_off : 0.0;

  const bool closed_form =
      a.family() == PerturbationFamily::identity && p.family() == PotentialFamily::gaussian;
  r.heuristic = !closed_form;
  r.exact = closed_form;

  const bool offdiag_ok = dim == 1 || worst_off <= 0.0;
  const bool bounded_rows = std::isfinite(r.grid_sup) && !any_direction_grows(grid, dim, row_sums);
  r.satisfied = offdiag_ok && bounded_rows;
  if (!offdiag_ok) r.warnings.push_back("off-diagonal second derivative of V_a is positive somewhere on the grid");
  if (!bounded_rows) r.warnings.push_back("row sums of Hess V_a grow with the probe radius");
  return r;
}

}  // namespace logsob
