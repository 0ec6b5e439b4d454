#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bresse/fem.hpp"

namespace bresse {

/// (t, E, D) samples of one trajectory plus the run metadata.
struct EnergyTrace {
    struct Sample {
        double t = 0.0;
        double energy = 0.0;
        double dissipation = 0.0;
    };
    std::vector<Sample> samples;
    double dt = 0.0;
    std::string scheme;
    std::uint64_t scenario_hash = 0;
    /// max_k |E_{k+1} - E_k + dt D(midpoint)| over the run.
    double max_balance_residual = 0.0;
};

/// Implicit midpoint step s -> s+ with the factorization of
/// M + dt/2 C + dt^2/4 K cached across steps. For C = 0 the map is
/// G-orthogonal, so quadratic invariants are preserved per step.
class MidpointStepper {
public:
    MidpointStepper(const DiscreteOperator& op, double dt);

    StateVector step(const StateVector& s) const;
    double dt() const { return dt_; }

private:
    const DiscreteOperator& op_;
    double dt_;
    Eigen::LLT<Matrix> solver_;
};

/// dt = h / (2 max wave speed); the scheme is unconditionally stable, this
/// is purely an accuracy default.
double default_time_step(const DiscreteOperator& op);

/// March to horizon T recording every `sample_every` steps (plus the final
/// state); the discrete energy balance E_{k+1} - E_k = -dt D(midpoint) is
/// tracked and its worst residual stored in the trace.
EnergyTrace simulate(const DiscreteOperator& op, const StateVector& s0, double t_max,
                     double dt, int sample_every = 1);

}  // namespace bresse
