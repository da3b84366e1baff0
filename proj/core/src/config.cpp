// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "logsob/error.hpp"

namespace logsob {

namespace {

std::map<std::string, std::string> split_pairs(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
      throw ParseError("expected key=value, got '" + token + "'");
    auto [it, inserted] = kv.emplace(token.substr(0, eq), token.substr(eq + 1));
    if (!inserted) throw ParseError("duplicate key '" + it->first + "'");
  }
  return kv;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw ParseError("invalid number for " + key + ": '" + v + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ParseError("invalid integer for " + key + ": '" + v + "'");
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string_view to_string(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::gaussian: return "gaussian";
    case PotentialFamily::subbotin: return "subbotin";
    case PotentialFamily::double_well: return "double_well";
    case PotentialFamily::custom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(PerturbationFamily family) {
  switch (family) {
    case PerturbationFamily::identity: return "identity";
    case PerturbationFamily::arctan: return "arctan";
    case PerturbationFamily::custom: return "custom";
  }
  return "unknown";
}

PotentialSpec parse_potential_spec(std::string_view text) {
  auto kv = split_pairs(text);
  PotentialSpec spec;
  auto family = kv.find("family");
  if (family == kv.end()) throw ParseError("potential spec requires family=...");
  const std::string name = family->second;
  kv.erase(family);
  std::string param;
  if (name == "gaussian") {
    spec.family = PotentialFamily::gaussian;
    param = "rho";
  } else if (name == "subbotin") {
    spec.family = PotentialFamily::subbotin;
    param = "alpha";
  } else if (name == "double_well") {
    spec.family = PotentialFamily::double_well;
    param = "beta";
  } else {
    throw ParseError("unknown potential family '" + name + "'");
  }
  for (const auto& [key, value] : kv) {
    if (key == "dim") {
      spec.dim = parse_int(key, value);
    } else if (key == param) {
      const double v = parse_double(key, value);
      if (key == "rho") spec.rho = v;
      if (key == "alpha") spec.alpha = v;
      if (key == "beta") spec.beta = v;
    } else {
      throw ParseError("unknown key '" + key + "' for family " + name);
    }
  }
  validate(spec);
  return spec;
}

PerturbationSpec parse_perturbation_spec(std::string_view text) {
  auto kv = split_pairs(text);
  PerturbationSpec spec;
  auto family = kv.find("perturbation");
  if (family == kv.end()) throw ParseError("perturbation spec requires perturbation=...");
  const std::string name = family->second;
  kv.erase(family);
  if (name == "identity") {
    spec.family = PerturbationFamily::identity;
  } else if (name == "arctan") {
    spec.family = PerturbationFamily::arctan;
  } else {
    throw ParseError("unknown perturbation '" + name + "'");
  }
  for (const auto& [key, value] : kv) {
    if (key == "eps" && spec.family == PerturbationFamily::arctan)
      spec.eps = parse_double(key, value);
    else
      throw ParseError("unknown key '" + key + "' for perturbation " + name);
  }
  if (spec.family == PerturbationFamily::arctan && kv.find("eps") == kv.end())
    throw ParseError("perturbation=arctan requires eps=...");
  validate(spec);
  return spec;
}

std::string render(const PotentialSpec& spec) {
  std::string out = "family=" + std::string(to_string(spec.family));
  switch (spec.family) {
    case PotentialFamily::gaussian: out += " rho=" + format_number(spec.rho); break;
    case PotentialFamily::subbotin: out += " alpha=" + format_number(spec.alpha); break;
    case PotentialFamily::double_well: out += " beta=" + format_number(spec.beta); break;
    case PotentialFamily::custom: break;
  }
  out += " dim=" + std::to_string(spec.dim);
  return out;
}

std::string render(const PerturbationSpec& spec) {
  std::string out = "perturbation=" + std::string(to_string(spec.family));
  if (spec.family == PerturbationFamily::arctan) out += " eps=" + format_number(spec.eps);
  return out;
}

}  // namespace logsob
