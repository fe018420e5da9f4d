#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "fractherm/oracle.hpp"
#include "fractherm/stepper.hpp"

namespace fractherm {

/// Configuration parse/validation failure; key names the offending entry.
struct ConfigError : std::runtime_error {
  ConfigError(std::string key_, const std::string& message);
  std::string key;
};

/// Flat `key = value` text with '#' comments.  Duplicate keys are rejected.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap read_config_file(const std::string& path);

/// Resolves a parsed map into a runnable configuration.  Required keys:
/// alpha, lambda, T, K, N, conductivity, u0.  Optional with defaults:
/// source=none, picard_tol=1e-12, picard_max_iter=50,
/// nonlocal_alpha0_factor=true, linearization=picard.
/// Unknown keys are errors.
ProblemConfig make_problem_config(const ConfigMap& map);

/// The manufactured solution behind an mms_* source key, if any.
std::optional<ManufacturedSolution> config_manufactured_solution(const ConfigMap& map);

/// The map with defaults filled in, for manifests.
ConfigMap resolved_config(const ConfigMap& map);

}  // namespace fractherm
