#pragma once

#include <iosfwd>
#include <string>

#include "bresse/model.hpp"

namespace bresse {

/// Parse a scenario file (INI-style sections and key = value lines).
///
/// Recognized sections and keys:
///   [beam]        rho1 rho2 k1 k2 k3 ell length
///   [damping]     model = kelvin_voigt | viscous
///   [damping.d1]  kind = zero | global | indicator | smoothstep
///   [damping.d2]  d0, alpha, beta (indicator/smoothstep), ramp (smoothstep)
///   [damping.d3]
///   [bc]          type = dddd | dnnd
///   [run]         n_elements dt tmax sample_every
///                 lambda_min lambda_max samples seed
///
/// Unknown sections or keys are errors; all diagnostics are collected and
/// reported in one ConfigError. The parsed config is NOT semantically
/// validated here; run validate_scenario for that.
ScenarioConfig parse_scenario(std::istream& in, const std::string& origin = "<stream>");

/// parse_scenario on a file path; missing file raises ConfigError.
ScenarioConfig load_scenario(const std::string& path);

/// Canonical one-line-per-field rendering used for hashing and manifests.
std::string canonical_description(const ScenarioConfig& cfg);

}  // namespace bresse
