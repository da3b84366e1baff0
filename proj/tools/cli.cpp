// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>

#include "logsob/bounds.hpp"
#include "logsob/config.hpp"
#include "logsob/curvature.hpp"
#include "logsob/error.hpp"
#include "logsob/sampling.hpp"
#include "logsob/sde.hpp"
#include "logsob/verify.hpp"

namespace logsob::cli {

namespace {

using Json = nlohmann::ordered_json;

// JSON has no infinities; they are written as strings.
Json num(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

Json nums(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json to_json(const CurvatureReport& k) {
  Json j;
  j["kind"] = to_string(k.kind);
  j["value"] = num(k.value);
  j["argmin"] = nums(k.argmin);
  j["argmin_t"] = num(k.argmin_t);
  j["method"] = to_string(k.method);
  j["certified"] = k.certified;
  j["unbounded_below"] = k.unbounded_below;
  if (k.grid_cross_check) j["grid_cross_check"] = num(*k.grid_cross_check);
  j["evaluations"] = k.evaluations;
  j["notes"] = k.notes;
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["constant"] = num(r.constant);
  j["valid"] = r.valid;
  j["certified"] = r.certified;
  j["scope"] = r.scope;
  Json in;
  in["potential"] = r.inputs.potential;
  if (!r.inputs.perturbation.empty()) in["perturbation"] = r.inputs.perturbation;
  if (r.inputs.eps) in["eps"] = num(*r.inputs.eps);
  in["dim"] = r.inputs.dim;
  if (r.inputs.beta) in["beta"] = num(*r.inputs.beta);
  j["inputs"] = in;
  Json pre = Json::array();
  for (const auto& c : r.preconditions)
    pre.push_back({{"name", c.name}, {"satisfied", c.satisfied}, {"heuristic", c.heuristic}, {"detail", c.detail}});
  j["preconditions"] = pre;
  if (r.method == BoundMethod::bakry_emery || r.method == BoundMethod::holley_stroock) j["rho"] = num(r.rho);
  if (r.curvature) j["curvature"] = to_json(*r.curvature);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const Certificate& c) {
  Json j;
  j["family"] = c.family;
  j["eps"] = num(c.eps);
  j["dim"] = c.dim;
  if (c.family == "double_well") j["beta"] = num(c.beta);
  j["coefficients"] = nums(c.coefficients);
  Json roots = Json::array();
  for (const auto& r : c.roots) roots.push_back({{"t", num(r.t)}, {"multiplicity", r.multiplicity}});
  j["roots"] = roots;
  j["verdict"] = c.verdict;
  j["kappa"] = num(c.kappa_if_valid);
  return j;
}

Json to_json(const CheckReport& r) {
  Json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["k"] = num(r.k);
  j["c"] = num(r.c);
  j["tolerance_model"] = r.tolerance_model;
  j["n_paths"] = r.n_paths;
  j["dt"] = num(r.dt);
  j["seed"] = r.seed;
  Json est = Json::array();
  for (const auto& e : r.estimates) est.push_back({{"name", e.name}, {"mean", nums(e.mean)}, {"std_error", nums(e.std_error)}});
  j["estimates"] = est;
  Json cmp = Json::array();
  for (const auto& c : r.comparisons)
    cmp.push_back({{"lhs", c.lhs},
                   {"rhs", c.rhs},
                   {"one_sided", c.one_sided},
                   {"difference", nums(c.difference)},
                   {"allowed", nums(c.allowed)},
                   {"pass", c.pass}});
  j["comparisons"] = cmp;
  j["notes"] = r.notes;
  return j;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(flag + ": malformed number '" + item + "'");
    }
  }
  if (out.empty()) throw ParseError(flag + ": empty list");
  return out;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  const auto colon = text.find(':');
  try {
    if (colon != std::string::npos) {
      std::size_t u1 = 0, u2 = 0;
      const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
      const int lo = std::stoi(a, &u1), hi = std::stoi(b, &u2);
      if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
      for (int d = lo; d <= hi; ++d) dims.push_back(d);
      if (dims.empty()) throw ParameterError("--dims: empty range '" + text + "'");
      return dims;
    }
  } catch (const ParameterError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("--dims: malformed range '" + text + "'");
  }
  for (double v : parse_list(text, "--dims")) {
    if (v != std::floor(v)) throw ParseError("--dims: non-integer dimension '" + format_number(v) + "'");
    dims.push_back(static_cast<int>(v));
  }
  return dims;
}

CertifiedFamily parse_family(const std::string& s) {
  if (s == "quadric") return CertifiedFamily::quadric;
  if (s == "double_well") return CertifiedFamily::double_well;
  throw ParseError("--family: unknown family '" + s + "' (expected quadric or double_well)");
}

BoundReport run_bound(const std::string& method, const Potential& p, const Perturbation& a) {
  if (method == "fk" || method == "feynman_kac") return fk_bound(p, a);
  if (method == "fk-mono" || method == "feynman_kac_monotone") return fk_mono_bound(p, a);
  if (method == "be" || method == "bakry_emery") return bakry_emery_bound(p);
  if (method == "hs" || method == "holley_stroock") return holley_stroock_bound(p, a);
  throw ParseError("--method: unknown bound method '" + method + "' (expected fk, fk-mono, be or hs)");
}

// Writes to --out FILE when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, Json& outputs) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open output file '" + path + "'");
      outputs.push_back(path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

struct Options {
  std::string manifest;
  std::string potential;
  std::string perturbation = "perturbation=identity";
  std::string method;
  std::string out;
  std::string family;
  double eps = 0.0;
  int dim = 1;
  std::optional<double> beta;
  std::string dims;
  double t = 1.0;
  double dt = 1e-3;
  std::size_t paths = 100000;
  std::uint64_t seed = 0;
  std::string x0;
  std::string variant = "perturbed";
  std::string emit_paths;
  std::string check;
  std::string f;
  std::string checkpoints;
  std::size_t samples = 100000;
  std::size_t n = 1000;
  std::string sample_method = "radial";
};

SdeConfig sde_config(const Options& o, int dim) {
  SdeConfig cfg;
  cfg.dt = o.dt;
  cfg.horizon = o.t;
  cfg.n_paths = o.paths;
  cfg.seed = o.seed;
  cfg.x0 = o.x0.empty() ? Point(static_cast<std::size_t>(dim), 0.0) : parse_list(o.x0, "--x0");
  if (cfg.x0.size() != static_cast<std::size_t>(dim))
    throw ParseError("--x0: expected " + std::to_string(dim) + " coordinates, got '" + o.x0 + "'");
  if (!o.checkpoints.empty()) cfg.checkpoints = parse_list(o.checkpoints, "--checkpoints");
  return cfg;
}

Json sde_inputs(const Options& o) {
  return {{"t", num(o.t)}, {"dt", num(o.dt)}, {"paths", o.paths}, {"seed", o.seed}, {"x0", o.x0}};
}

int cmd_bound(const Options& o, std::ostream& out, Json& manifest) {
  const Potential p = Potential::make(parse_potential_spec(o.potential));
  const Perturbation a = Perturbation::make(parse_perturbation_spec(o.perturbation));
  const std::string method = o.method.empty() ? "fk" : o.method;
  manifest["inputs"] = {{"potential", render(p.spec())}, {"perturbation", render(a.spec())}, {"method", method}};
  const BoundReport r = run_bound(method, p, a);
  Sink sink(o.out, out, manifest["outputs"]);
  sink.stream() << to_json(r).dump(2) << '\n';
  return r.valid ? kOk : kFailed;
}

int cmd_certify(const Options& o, std::ostream& out, Json& manifest) {
  const CertifiedFamily fam = parse_family(o.family);
  Json in = {{"family", o.family}, {"eps", num(o.eps)}, {"dim", o.dim}};
  if (o.beta) in["beta"] = num(*o.beta);
  manifest["inputs"] = in;
  if (fam == CertifiedFamily::double_well && !o.beta) throw ParseError("--beta is required for family double_well");
  const Certificate c = fam == CertifiedFamily::quadric ? certify_quadric(o.eps, o.dim)
                                                        : certify_double_well(o.eps, o.dim, *o.beta);
  Sink sink(o.out, out, manifest["outputs"]);
  sink.stream() << to_json(c).dump(2) << '\n';
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, Json& manifest) {
  const CertifiedFamily fam = parse_family(o.family);
  const double beta = o.beta.value_or(fam == CertifiedFamily::double_well ? 0.25 : 0.0);
  const std::vector<int> dims = parse_dims(o.dims);
  manifest["inputs"] = {{"family", o.family}, {"dims", o.dims}, {"beta", num(beta)}};
  const SweepTable table = dimension_sweep(fam, dims, beta);
  Sink sink(o.out, out, manifest["outputs"]);
  auto& s = sink.stream();
  s << "d,eps,kappa,bound,envelope,valid,certified\n";
  for (const auto& r : table.rows)
    s << r.dim << ',' << csv_number(r.eps) << ',' << csv_number(r.kappa) << ',' << csv_number(r.bound) << ','
      << csv_number(r.envelope) << ',' << (r.valid ? "true" : "false") << ',' << (r.certified ? "true" : "false")
      << '\n';
  return table.all_within_envelope ? kOk : kFailed;
}

int cmd_simulate(const Options& o, std::ostream& out, Json& manifest) {
  const Potential p = Potential::make(parse_potential_spec(o.potential));
  const Perturbation a = Perturbation::make(parse_perturbation_spec(o.perturbation));
  if (o.variant != "plain" && o.variant != "perturbed")
    throw ParseError("--variant: expected plain or perturbed, got '" + o.variant + "'");
  const Variant variant = o.variant == "plain" ? Variant::plain : Variant::perturbed;
  const SdeConfig cfg = sde_config(o, p.dim());
  Json in = {{"potential", render(p.spec())}, {"perturbation", render(a.spec())}, {"variant", o.variant}};
  in.update(sde_inputs(o));
  manifest["inputs"] = in;

  const StepPlan plan = plan_steps(cfg);
  const auto records = simulate(p, a, cfg, variant);
  const auto d = static_cast<std::size_t>(p.dim());
  std::vector<double> sum(d + 1, 0.0), sum2(d + 1, 0.0);
  std::size_t valid = 0, divergent = 0;
  double gap = 0.0;
  for (const auto& r : records) {
    if (r.divergent) {
      ++divergent;
      continue;
    }
    ++valid;
    for (std::size_t i = 0; i < d; ++i) {
      sum[i] += r.x_T[i];
      sum2[i] += r.x_T[i] * r.x_T[i];
    }
    const double w = std::exp(r.log_weight);
    sum[d] += w;
    sum2[d] += w * w;
    gap = std::max(gap, std::abs(r.log_weight - r.log_weight_ito));
  }
  if (valid < 2) throw EstimationError("fewer than 2 valid paths");
  std::vector<double> mean(d + 1), se(d + 1);
  const double nv = static_cast<double>(valid);
  for (std::size_t i = 0; i <= d; ++i) {
    mean[i] = sum[i] / nv;
    se[i] = std::sqrt(std::max(0.0, (sum2[i] / nv - mean[i] * mean[i]) * nv / (nv - 1.0)) / nv);
  }
  const bool ok = static_cast<double>(divergent) <= kMaxDivergentFraction * static_cast<double>(records.size());

  Json j;
  j["potential"] = render(p.spec());
  j["perturbation"] = render(a.spec());
  j["variant"] = o.variant;
  j["horizon"] = num(cfg.horizon);
  j["dt"] = num(plan.dt);
  j["steps"] = plan.steps;
  j["n_paths"] = cfg.n_paths;
  j["seed"] = cfg.seed;
  j["x0"] = nums(cfg.x0);
  j["mean_x_T"] = {{"mean", nums(std::span(mean).first(d))}, {"std_error", nums(std::span(se).first(d))}};
  j["mean_R"] = {{"mean", num(mean[d])}, {"std_error", num(se[d])}};
  j["max_dual_form_gap"] = num(gap);
  j["n_valid"] = valid;
  j["n_divergent"] = divergent;
  j["valid"] = ok;

  if (!o.emit_paths.empty()) {
    std::ofstream f(o.emit_paths);
    if (!f) throw Error("cannot open '" + o.emit_paths + "'");
    manifest["outputs"].push_back(o.emit_paths);
    f << "path_id";
    for (std::size_t i = 0; i < d; ++i) f << ",x" << i + 1;
    f << ",logR,J_norm\n";
    for (const auto& r : records) {
      f << r.id;
      for (double v : r.x_T) f << ',' << csv_number(v);
      f << ',' << csv_number(r.log_weight) << ',' << csv_number(spectral_norm(r.J_T)) << '\n';
    }
  }
  Sink sink(o.out, out, manifest["outputs"]);
  sink.stream() << j.dump(2) << '\n';
  return ok ? kOk : kFailed;
}

int cmd_verify(const Options& o, std::ostream& out, Json& manifest) {
  const Potential p = Potential::make(parse_potential_spec(o.potential));
  const Perturbation a = Perturbation::make(parse_perturbation_spec(o.perturbation));
  SdeConfig cfg = sde_config(o, p.dim());
  Json in = {{"check", o.check}, {"potential", render(p.spec())}, {"perturbation", render(a.spec())}};
  in.update(sde_inputs(o));
  if (!o.f.empty()) in["f"] = o.f;
  manifest["inputs"] = in;

  CheckReport r;
  if (o.check == "representation") {
    r = representation_check(p, a, test_function_by_name(o.f.empty() ? "linear" : o.f, p.dim()), cfg);
  } else if (o.check == "martingale") {
    r = martingale_check(p, a, cfg);
  } else if (o.check == "monotone") {
    r = monotone_comparison(p, a, test_function_by_name(o.f.empty() ? "one_plus_tanh" : o.f, p.dim()), cfg);
  } else if (o.check == "audit") {
    const BoundReport bound = run_bound(o.method.empty() ? "fk" : o.method, p, a);
    const SampleMethod m = p.is_radial() ? SampleMethod::radial_exact : SampleMethod::mala;
    r = lsi_audit(p, bound, sample_measure(p, o.samples, m, o.seed), BootstrapOptions{200, o.seed});
  } else {
    throw ParseError("--check: unknown check '" + o.check + "' (expected representation, martingale, monotone or audit)");
  }
  Sink sink(o.out, out, manifest["outputs"]);
  sink.stream() << to_json(r).dump(2) << '\n';
  return r.pass ? kOk : kFailed;
}

int cmd_sample(const Options& o, std::ostream& out, Json& manifest) {
  const Potential p = Potential::make(parse_potential_spec(o.potential));
  SampleMethod m;
  if (o.sample_method == "radial" || o.sample_method == "radial_exact")
    m = SampleMethod::radial_exact;
  else if (o.sample_method == "mala")
    m = SampleMethod::mala;
  else
    throw ParseError("--method: expected radial or mala, got '" + o.sample_method + "'");
  manifest["inputs"] = {{"potential", render(p.spec())}, {"n", o.n}, {"method", to_string(m)}, {"seed", o.seed}};
  const SampleSet s = sample_measure(p, o.n, m, o.seed);
  Sink sink(o.out, out, manifest["outputs"]);
  auto& os = sink.stream();
  for (int i = 0; i < s.dim; ++i) os << (i ? ",x" : "x") << i + 1;
  os << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = s.point(i);
    for (std::size_t k = 0; k < x.size(); ++k) os << (k ? "," : "") << csv_number(x[k]);
    os << '\n';
  }
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Numerical log-Sobolev bounds via Feynman-Kac perturbations", "logsob"};
  app.require_subcommand(1);
  app.fallthrough(true);
  app.add_option("--manifest", o.manifest, "Write the run manifest to FILE instead of stderr");

  auto add_specs = [&](CLI::App* c, bool with_perturbation) {
    c->add_option("--potential", o.potential, "Potential spec, e.g. \"family=subbotin alpha=4 dim=2\"")->required();
    if (with_perturbation)
      c->add_option("--perturbation", o.perturbation, "Perturbation spec, e.g. \"perturbation=arctan eps=0.3\"");
  };
  auto add_sde = [&](CLI::App* c) {
    c->add_option("--t", o.t, "Horizon T");
    c->add_option("--dt", o.dt, "Step size");
    c->add_option("--paths", o.paths, "Number of paths");
    c->add_option("--seed", o.seed, "RNG seed");
    c->add_option("--x0", o.x0, "Start point, comma separated");
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Write the report to FILE"); };

  auto* bound = app.add_subcommand("bound", "LSI constant bound");
  add_specs(bound, true);
  bound->add_option("--method", o.method, "fk, fk-mono, be or hs (default fk)");
  add_out(bound);

  auto* certify = app.add_subcommand("certify", "Polynomial certificate for the arctan perturbation");
  certify->add_option("--family", o.family, "quadric or double_well")->required();
  certify->add_option("--eps", o.eps, "Perturbation strength")->required();
  certify->add_option("--dim", o.dim, "Dimension")->required();
  certify->add_option("--beta", o.beta, "Double-well parameter");
  add_out(certify);

  auto* sweep = app.add_subcommand("sweep", "Optimized bound across dimensions (CSV)");
  sweep->add_option("--family", o.family, "quadric or double_well")->required();
  sweep->add_option("--dims", o.dims, "Range lo:hi or list d1,d2,...")->required();
  sweep->add_option("--beta", o.beta, "Double-well parameter (default 0.25)");
  add_out(sweep);

  auto* sim = app.add_subcommand("simulate", "Euler-Maruyama paths with tangent flow and Girsanov weight");
  add_specs(sim, true);
  add_sde(sim);
  sim->add_option("--variant", o.variant, "plain or perturbed (default perturbed)");
  sim->add_option("--emit-paths", o.emit_paths, "Write per-path CSV to FILE");
  add_out(sim);

  auto* verify = app.add_subcommand("verify", "Statistical checks");
  verify->add_option("--check", o.check, "representation, martingale, monotone or audit")->required();
  add_specs(verify, true);
  add_sde(verify);
  verify->add_option("--f", o.f, "Test function: linear, tanh, one_plus_tanh, constant, exp_tilt");
  verify->add_option("--checkpoints", o.checkpoints, "Martingale checkpoint times, comma separated");
  verify->add_option("--samples", o.samples, "Audit sample count");
  verify->add_option("--method", o.method, "Audit bound method (default fk)");
  add_out(verify);

  auto* sample = app.add_subcommand("sample", "Draw samples from mu (CSV)");
  add_specs(sample, false);
  sample->add_option("-n", o.n, "Number of samples");
  sample->add_option("--method", o.sample_method, "radial or mala");
  sample->add_option("--seed", o.seed, "RNG seed");
  add_out(sample);

  Json manifest;
  manifest["command"] = "";
  manifest["inputs"] = Json::object();
  manifest["seed"] = 0;
  manifest["versions"] = "logsob " LOGSOB_VERSION;
  manifest["started"] = utc_now();
  manifest["outputs"] = Json::array();

  int code = kOk;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    CLI::App* cmd = app.get_subcommands().front();
    manifest["command"] = cmd->get_name();
    manifest["seed"] = o.seed;
    if (cmd == bound) code = cmd_bound(o, out, manifest);
    if (cmd == certify) code = cmd_certify(o, out, manifest);
    if (cmd == sweep) code = cmd_sweep(o, out, manifest);
    if (cmd == sim) code = cmd_simulate(o, out, manifest);
    if (cmd == verify) code = cmd_verify(o, out, manifest);
    if (cmd == sample) code = cmd_sample(o, out, manifest);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    code = kUsage;
  } catch (const logsob::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    code = kUsage;
  } catch (const PreconditionError& e) {
    err << "precondition failed [" << e.condition() << "]: " << e.what() << '\n';
    code = kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kFailed;
  }

  manifest["finished"] = utc_now();
  manifest["exit_code"] = code;
  const std::string text = manifest.dump(2);
  if (!o.manifest.empty()) {
    std::ofstream f(o.manifest);
    if (f) f << text << '\n';
    else err << "error: cannot write manifest '" << o.manifest << "'\n";
  } else {
    err << text << '\n';
  }
  return code;
}

}  // namespace logsob::cli
