#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bresse/damping.hpp"

namespace bresse {

/// Physical constants of the curved beam. All strictly positive.
struct BeamParameters {
    double rho1 = 1.0;    // mass density x cross-section area   [kg/m]
    double rho2 = 1.0;    // mass density x second moment        [kg m]
    double k1 = 1.0;      // shear stiffness                     [N]
    double k2 = 1.0;      // bending stiffness                   [N m^2]
    double k3 = 1.0;      // axial stiffness                     [N]
    double ell = 1.0;     // inverse radius of curvature         [1/m]
    double length = 1.0;  // beam length L                       [m]
};

struct WaveSpeeds {
    double c1 = 0.0;  // shear wave
    double c2 = 0.0;  // bending wave
    double c3 = 0.0;  // longitudinal wave
    double min() const;
    double max() const;
};

/// c1 = sqrt(k1/rho1), c2 = sqrt(k2/rho2), c3 = sqrt(k3/rho1).
WaveSpeeds wave_speeds(const BeamParameters& params);

enum class BoundaryCondition {
    FullDirichlet,            // all three displacements clamped at both ends
    DirichletNeumannNeumann,  // vertical clamped, shear angle and longitudinal free
};

std::string to_string(BoundaryCondition bc);

/// Run-specific knobs: mesh size and the simulate/sweep controls.
struct RunKnobs {
    int n_elements = 100;
    double dt = 0.0;          // 0 = choose h / (2 max wave speed)
    double t_max = 20.0;
    int sample_every = 1;
    double lambda_min = 0.0;  // 0 = one and a half decades below the cap
    double lambda_max = 0.0;  // 0 = resolved-frequency cap
    int sweep_samples = 48;
    std::uint64_t seed = 0;
};

/// One physical configuration plus how to run it.
struct ScenarioConfig {
    BeamParameters params;
    DampingSpec damping;
    BoundaryCondition bc = BoundaryCondition::FullDirichlet;
    RunKnobs run;
};

struct Violation {
    std::string field;
    std::string message;
};

/// All type invariants, reported rather than thrown: positive constants,
/// profile pieces partitioning [0, L] with nonnegative values, the
/// Dirichlet-Neumann-Neumann admissibility constraint L != n*pi/ell
/// (relative margin 1e-9), and positive run knobs.
std::vector<Violation> validate_scenario(const ScenarioConfig& cfg);

/// validate_scenario, throwing ConfigError with the joined messages.
void ensure_valid(const ScenarioConfig& cfg);

/// D(x) for a profile; thin wrapper so call sites read uniformly.
double eval_damping(const DampingProfile& profile, double x);

/// Decay regimes of the Kelvin-Voigt classification table.
enum class DecayRegime {
    Analytic,
    Exponential,
    PolynomialOneOverT,
    PolynomialOneOverSqrtT,
    Unknown,
};

std::string to_string(DecayRegime regime);

enum class ProfileSmoothness { NonSmooth, Lipschitz };

/// Predicted regime for a Kelvin-Voigt damping arrangement:
///   - every D_i bounded below on all of (0, L)          -> Analytic
///   - Lipschitz coefficients, common positivity window  -> Exponential
///   - non-smooth coefficients, common positivity window -> 1/t
///   - D1 = D3 = 0 and D2 locally positive               -> 1/sqrt(t)
/// Throws ConfigError for the viscous model (not covered by the table).
DecayRegime expected_class(const DampingSpec& spec, ProfileSmoothness smoothness);

/// Same, with the smoothness taken from the profile constructors.
DecayRegime expected_class(const DampingSpec& spec);

}  // namespace bresse
