// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logsob/config.hpp"
#include "logsob/error.hpp"
#include "logsob/grid.hpp"

namespace logsob {

namespace {

double squared_norm(std::span<const double> x) {
  double t = 0.0;
  for (double v : x) t += v * v;
  return t;
}

void require_finite(std::span<const double> x, const char* what) {
  for (double v : x)
    if (!std::isfinite(v)) throw EvaluationError(std::string(what) + ": non-finite input", Point(x.begin(), x.end()));
}

// H = s I + c x x^T
void radial_hessian(std::span<const double> x, double s, double c, Matrix& out) {
  const std::size_t d = x.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = c * x[i] * x[j] + (i == j ? s : 0.0);
}

}  // namespace

void validate(const PotentialSpec& spec) {
  if (spec.dim < 1) throw ParameterError("dim must satisfy dim >= 1");
  switch (spec.family) {
    case PotentialFamily::gaussian:
      if (!(spec.rho > 0.0) || !std::isfinite(spec.rho)) throw ParameterError("gaussian requires rho > 0");
      break;
    case PotentialFamily::subbotin:
      if (!(spec.alpha > 2.0) || !std::isfinite(spec.alpha)) throw ParameterError("subbotin requires alpha > 2");
      break;
    case PotentialFamily::double_well:
      if (!(spec.beta > 0.0 && spec.beta < 0.5)) throw ParameterError("double_well requires beta in (0, 1/2)");
      break;
    case PotentialFamily::custom:
      break;
  }
}

class Potential::Model {
 public:
  explicit Model(PotentialSpec spec) : spec_(spec) {}
  virtual ~Model() = default;
  virtual double value(std::span<const double> x) const = 0;
  virtual void gradient(std::span<const double> x, std::span<double> out) const = 0;
  virtual void hessian(std::span<const double> x, Matrix& out) const = 0;
  virtual std::optional<double> radial_rho_minus(double) const { return std::nullopt; }
  virtual bool is_radial() const { return true; }
  virtual std::string name() const { return render(spec_); }

  const PotentialSpec& spec() const { return spec_; }

 protected:
  PotentialSpec spec_;
};

class Potential::GaussianModel final : public Potential::Model {
 public:
  using Model::Model;
  double value(std::span<const double> x) const override { return 0.5 * spec_.rho * squared_norm(x); }
  void gradient(std::span<const double> x, std::span<double> out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = spec_.rho * x[i];
  }
  void hessian(std::span<const double> x, Matrix& out) const override { radial_hessian(x, spec_.rho, 0.0, out); }
  std::optional<double> radial_rho_minus(double) const override { return spec_.rho; }
};

class Potential::SubbotinModel final : public Potential::Model {
 public:
  using Model::Model;
  double value(std::span<const double> x) const override {
    const double t = squared_norm(x);
    if (spec_.alpha == 4.0) return 0.25 * t * t;
    return std::pow(t, 0.5 * spec_.alpha) / spec_.alpha;
  }
  void gradient(std::span<const double> x, std::span<double> out) const override {
    const double s = radial_power(squared_norm(x));
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
  }
  // (alpha-2)|x|^{alpha-4} x x^T + |x|^{alpha-2} I, written with |x|^{alpha-2}
  // factored out so that x = 0 is handled for every alpha > 2.
  void hessian(std::span<const double> x, Matrix& out) const override {
    const double t = squared_norm(x);
    const double s = radial_power(t);
    const double c = t > 0.0 ? (spec_.alpha - 2.0) * s / t : 0.0;
    radial_hessian(x, s, c, out);
  }
  // In d = 1 only the radial eigenvalue (alpha - 1)|x|^{alpha-2} exists.
  std::optional<double> radial_rho_minus(double t) const override {
    return spec_.dim == 1 ? (spec_.alpha - 1.0) * radial_power(t) : radial_power(t);
  }

 private:
  // |x|^{alpha-2} as a function of t = |x|^2
  double radial_power(double t) const {
    if (spec_.alpha == 4.0) return t;
    return std::pow(t, 0.5 * (spec_.alpha - 2.0));
  }
};

class Potential::DoubleWellModel final : public Potential::Model {
 public:
  using Model::Model;
  double value(std::span<const double> x) const override {
    const double t = squared_norm(x);
    return 0.25 * t * t - 0.5 * spec_.beta * t;
  }
  void gradient(std::span<const double> x, std::span<double> out) const override {
    const double s = squared_norm(x) - spec_.beta;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
  }
  void hessian(std::span<const double> x, Matrix& out) const override {
    radial_hessian(x, squared_norm(x) - spec_.beta, 2.0, out);
  }
  // Eigenvalues 3t - beta (radial) and t - beta (tangential, d >= 2 only).
  std::optional<double> radial_rho_minus(double t) const override {
    return spec_.dim == 1 ? 3.0 * t - spec_.beta : t - spec_.beta;
  }
};

class Potential::CustomModel final : public Potential::Model {
 public:
  explicit CustomModel(Custom fns)
      : Model(PotentialSpec{PotentialFamily::custom, fns.dim}), fns_(std::move(fns)) {}
  double value(std::span<const double> x) const override { return fns_.value(x); }
  void gradient(std::span<const double> x, std::span<double> out) const override { fns_.gradient(x, out); }
  void hessian(std::span<const double> x, Matrix& out) const override { fns_.hessian(x, out); }
  bool is_radial() const override { return fns_.is_radial; }
  std::string name() const override { return fns_.name; }

 private:
  Custom fns_;
};

Potential::Potential(std::shared_ptr<const Model> model) : model_(std::move(model)) {}

Potential Potential::make(const PotentialSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case PotentialFamily::gaussian:
      return Potential(std::make_shared<GaussianModel>(spec));
    case PotentialFamily::subbotin:
      return Potential(std::make_shared<SubbotinModel>(spec));
    case PotentialFamily::double_well:
      return Potential(std::make_shared<DoubleWellModel>(spec));
    case PotentialFamily::custom:
      break;
  }
  throw ParameterError("custom potentials must be built with Potential::custom");
}

Potential Potential::gaussian(int dim, double rho) {
  PotentialSpec s;
  s.family = PotentialFamily::gaussian;
  s.dim = dim;
  s.rho = rho;
  return make(s);
}

Potential Potential::subbotin(int dim, double alpha) {
  PotentialSpec s;
  s.family = PotentialFamily::subbotin;
  s.dim = dim;
  s.alpha = alpha;
  return make(s);
}

Potential Potential::double_well(int dim, double beta) {
  PotentialSpec s;
  s.family = PotentialFamily::double_well;
  s.dim = dim;
  s.beta = beta;
  return make(s);
}

Potential Potential::custom(Custom fns) {
  if (fns.dim < 1) throw ParameterError("dim must satisfy dim >= 1");
  if (!fns.value || !fns.gradient || !fns.hessian)
    throw ParameterError("custom potential requires value, gradient and hessian callables");
  return Potential(std::make_shared<CustomModel>(std::move(fns)));
}

int Potential::dim() const { return model_->spec().dim; }
PotentialFamily Potential::family() const { return model_->spec().family; }
const PotentialSpec& Potential::spec() const { return model_->spec(); }
std::string Potential::name() const { return model_->name(); }
bool Potential::is_radial() const { return model_->is_radial(); }

double Potential::value(std::span<const double> x) const { return model_->value(x); }

void Potential::gradient(std::span<const double> x, std::span<double> out) const { model_->gradient(x, out); }

Point Potential::gradient(std::span<const double> x) const {
  Point g(x.size());
  model_->gradient(x, g);
  return g;
}

void Potential::hessian(std::span<const double> x, Matrix& out) const {
  if (out.rows() != x.size() || out.cols() != x.size()) out = Matrix(x.size(), x.size());
  model_->hessian(x, out);
}

Matrix Potential::hessian(std::span<const double> x) const {
  Matrix h(x.size(), x.size());
  model_->hessian(x, h);
  return h;
}

double Potential::rho_minus(std::span<const double> x) const {
  require_finite(x, "rho_minus");
  if (auto closed = model_->radial_rho_minus(squared_norm(x))) return *closed;
  return rho_minus_eigensolve(x);
}

double Potential::rho_minus_eigensolve(std::span<const double> x) const {
  require_finite(x, "rho_minus");
  const Matrix h = hessian(x);
  if (family() == PotentialFamily::custom && h.asymmetry() > 1e-10 * std::max(1.0, h.max_abs()))
    throw EvaluationError("custom hessian is not symmetric", Point(x.begin(), x.end()));
  return smallest_eigenvalue(h);
}

std::optional<double> Potential::radial_rho_minus(double t) const { return model_->radial_rho_minus(t); }

HessianFloor Potential::hessian_floor() const {
  const auto& s = spec();
  switch (s.family) {
    case PotentialFamily::gaussian:
      return {s.rho, true};
    case PotentialFamily::subbotin:
      return {0.0, true};
    case PotentialFamily::double_well:
      return {-s.beta, true};
    case PotentialFamily::custom:
      break;
  }
  double floor = std::numeric_limits<double>::infinity();
  for (const auto& x : ProbeGrid::standard().points(dim())) floor = std::min(floor, rho_minus_eigensolve(x));
  return {floor, false};
}

}  // namespace logsob
