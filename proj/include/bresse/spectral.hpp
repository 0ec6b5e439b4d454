#pragma once

#include <string>
#include <vector>

#include "bresse/fem.hpp"

namespace bresse {

/// One point of a resolvent sweep: the G-operator norm of (i*lambda - A)^-1.
struct ResolventSample {
    double lambda = 0.0;
    double norm = 0.0;      // 1 / sigma_min(i*lambda - A) in the energy norm
    double residual = 0.0;  // consistency gap of the smallest-eigenvalue solve
    int iterations = 0;     // 0 for the dense path
};

enum class ResolventMethod {
    Auto,       // inverse iteration, dense fallback below 600 state dofs
    Iterative,  // shifted inverse iteration on the normal-equations pencil
    Dense,      // dense generalized eigensolve of ((iL-A)* G (iL-A), G)
};

/// Largest civilized probe frequency: pi * min(c) * N / (8 L). Above it the
/// mesh undersamples the continuum modes and sweeps are refused.
double frequency_cap(const DiscreteOperator& op);

/// All eigenvalues of the discrete generator, sorted by imaginary part.
/// Dense solve; refuses state dimensions above ~3000.
std::vector<Complex> eigenvalues(const DiscreteOperator& op);

/// k eigenvalues nearest `shift` by shift-invert Arnoldi; usable above the
/// dense limit. Throws NumericalError naming the shift on non-convergence.
std::vector<Complex> eigenvalues_near(const DiscreteOperator& op, Complex shift, int k,
                                      int krylov_dim = 0);

/// sigma_min(i*lambda - A) in the energy norm; never throws on resonance
/// (returns 0 there). The workhorse under resolvent_norm and clearance.
double sigma_min(const DiscreteOperator& op, double lambda,
                 ResolventMethod method = ResolventMethod::Auto);

/// Resolvent norm at i*lambda. Throws ResonanceError when i*lambda is
/// indistinguishable from an eigenvalue.
ResolventSample resolvent_norm(const DiscreteOperator& op, double lambda,
                               ResolventMethod method = ResolventMethod::Auto);

enum class SweepSpacing { Log, Linear };

/// Independent samples over [lambda_min, lambda_max]; refuses ranges above
/// the resolved-frequency cap; deterministic order regardless of thread
/// count; aborts at the first (lowest-lambda) resonance.
std::vector<ResolventSample> resolvent_sweep(const DiscreteOperator& op, double lambda_min,
                                             double lambda_max, int n_samples,
                                             SweepSpacing spacing = SweepSpacing::Log,
                                             int n_threads = 1);

/// Stability type read off the high-frequency resolvent growth.
struct StabilityClass {
    enum class Kind { Analytic, Exponential, Polynomial, Unknown };
    Kind kind = Kind::Unknown;
    double slope = 0.0;      // d log(norm) / d log(lambda) on the fit window
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    /// For Polynomial(l): energy decays like t^(-2/l).
    double energy_decay_exponent = 0.0;

    std::string describe() const;
};

std::string to_string(StabilityClass::Kind kind);

/// Least-squares slope of log norm vs log lambda over the top contiguous
/// decade of the sweep; slope <= -0.7 analytic, |slope| <= 0.3 exponential,
/// slope >= 0.7 polynomial of order slope, otherwise unknown. Needs at
/// least 8 samples spanning 1.5 decades.
StabilityClass classify_decay(const std::vector<ResolventSample>& sweep);

struct Clearance {
    double value = 0.0;   // min over the grid of sigma_min(i*lambda - A)
    double lambda = 0.0;  // minimizing grid point
};

/// Distance-to-spectrum proxy along the imaginary axis; strictly positive
/// for scenarios with an effective damping window.
Clearance imaginary_axis_clearance(const DiscreteOperator& op,
                                   const std::vector<double>& lambda_grid);

}  // namespace bresse
