// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "logsob/perturbation.hpp"
#include "logsob/potential.hpp"

namespace logsob {

/// Parses whitespace-separated key=value text such as
/// `family=subbotin alpha=4 dim=8`. Throws ParseError on unknown keys or
/// malformed numbers and ParameterError on out-of-range values.
PotentialSpec parse_potential_spec(std::string_view text);

/// `perturbation=arctan eps=0.35` or `perturbation=identity`.
PerturbationSpec parse_perturbation_spec(std::string_view text);

/// Canonical text form; parse(render(s)) == s for every valid spec.
std::string render(const PotentialSpec& spec);
std::string render(const PerturbationSpec& spec);

std::string_view to_string(PotentialFamily family);
std::string_view to_string(PerturbationFamily family);

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double v);

}  // namespace logsob
