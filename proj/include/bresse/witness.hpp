#pragma once

#include <vector>

#include "bresse/model.hpp"
#include "bresse/types.hpp"

namespace bresse {

/// One member of the non-uniform-stability certificate family for the
/// Dirichlet-Neumann-Neumann beam with D1 = 0, D2 = D3 = 1: a trigonometric
/// state at frequency lambda_n whose energy norm and defect are available
/// in closed form -- no mesh is involved anywhere.
struct WitnessSample {
    int n = 0;
    double lambda = 0.0;
    Complex a, b, c;                    // exact ansatz coefficients
    Complex a_lead, b_lead, c_lead;     // leading-order approximations
    double norm_state = 0.0;            // ||V_n|| in the energy norm
    double norm_residual = 0.0;         // ||(i lambda - A) V_n||
    double solve_residual = 0.0;        // backsubstitution defect of the 3x3 solve
    double condition = 0.0;             // inf-norm condition of the 3x3 matrix
};

/// lambda_n = n pi sqrt(rho2 k2) / (L rho2); the bending-branch resonance
/// that makes the shear-angle elastic terms cancel exactly.
double witness_frequency(int n, const BeamParameters& params);

/// 3x3 complex system for the ansatz amplitudes (A, B, C), solved by
/// partially pivoted elimination; the backsubstitution residual and an
/// infinity-norm condition estimate ride along.
struct WitnessCoefficients {
    Complex a, b, c;
    double solve_residual = 0.0;
    double condition = 0.0;
};
WitnessCoefficients witness_coefficients_exact(int n, const BeamParameters& params);

/// Closed-form leading orders: a, c decay like 1/n; b tends to a constant.
/// Throws NumericalError when a structural denominator vanishes.
struct WitnessAsymptotics {
    Complex a, b, c;
};
WitnessAsymptotics witness_coefficients_asymptotic(int n, const BeamParameters& params);

/// Energy norms of the state and of its defect, evaluated with the exact
/// trigonometric integrals int sin^2 = int cos^2 = L/2.
struct WitnessNorms {
    double norm_state = 0.0;
    double norm_residual = 0.0;
};
WitnessNorms witness_norms(int n, const BeamParameters& params);

WitnessSample witness_sample(int n, const BeamParameters& params);

/// Log-log growth fit over a family of indices: ||V_n|| ~ n^p and
/// ||defect_n|| ~ n^q. The non-uniform-stability indication is the relative
/// criterion q - p < 0 (defect growing strictly slower than the state).
struct WitnessGrowthReport {
    std::vector<WitnessSample> samples;
    double p = 0.0;  // state-norm growth exponent
    double q = 0.0;  // residual-norm growth exponent
    bool lack_of_uniform_stability = false;
};
WitnessGrowthReport witness_series(const std::vector<int>& n_list,
                                   const BeamParameters& params);

}  // namespace bresse
