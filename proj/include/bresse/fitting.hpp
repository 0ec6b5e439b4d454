#pragma once

#include <string>

#include "bresse/evolve.hpp"

namespace bresse {

/// Decay law fitted to the tail of an energy trace. The exponential and the
/// power-law model are always both fitted; the winner is chosen by residual
/// comparison alone, never by what a classifier predicts.
struct DecayFit {
    enum class Model { Exponential, Polynomial };
    Model model = Model::Polynomial;
    double rate = 0.0;        // delta for E ~ e^(-delta t), gamma for E ~ t^(-gamma)
    double amplitude = 0.0;   // fitted E at t=0 resp. t=1
    double window_lo = 0.0;
    double window_hi = 0.0;
    double residual = 0.0;           // rms log-residual of the winning model
    double competing_residual = 0.0; // rms log-residual of the losing model
    bool degenerate = false;         // no measurable decay over the window
    bool window_shrunk = false;      // energies underflowed, window trimmed
    /// First time from which the exponential model stays the better local
    /// description (a fixed mesh is eventually exponential); NaN if never.
    double crossover_time = 0.0;

    std::string describe() const;
};

/// Least squares of log E against t and against log t on the trailing
/// `window_fraction` of the trace (default: final 60%, transients are not
/// covered by any asymptotic statement). Requires at least 50 positive
/// samples in the window.
DecayFit fit_decay(const EnergyTrace& trace, double window_fraction = 0.6);

}  // namespace bresse
