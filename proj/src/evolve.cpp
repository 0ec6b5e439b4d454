#include "bresse/evolve.hpp"

#include <cmath>

namespace bresse {

MidpointStepper::MidpointStepper(const DiscreteOperator& op, double dt) : op_(op), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("midpoint step needs dt > 0");
    const Matrix W = op.mass() + (0.5 * dt) * op.damping() +
                     (0.25 * dt * dt) * op.stiffness();
    solver_.compute(W);
    if (solver_.info() != Eigen::Success)
        throw NumericalError("midpoint system matrix not positive definite (assembly bug)");
}

StateVector MidpointStepper::step(const StateVector& s) const {
    // Solve (M + dt/2 C + dt^2/4 K) v+ = M v - dt/2 C v - dt/2 K (2u + dt/2 v),
    // then u+ = u + dt/2 (v + v+).
    const double half = 0.5 * dt_;
    const Vector rhs = op_.mass() * s.v - half * (op_.damping() * s.v) -
                       half * (op_.stiffness() * (2.0 * s.u + half * s.v));
    StateVector out;
    out.v = solver_.solve(rhs);
    out.u = s.u + half * (s.v + out.v);
    return out;
}

double default_time_step(const DiscreteOperator& op) {
    return op.mesh().base_spacing / (2.0 * wave_speeds(op.config().params).max());
}

EnergyTrace simulate(const DiscreteOperator& op, const StateVector& s0, double t_max,
                     double dt, int sample_every) {
    if (!(t_max > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("simulate needs positive horizon and step");
    if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");

    MidpointStepper stepper(op, dt);
    const long n_steps = std::lround(std::ceil(t_max / dt - 1e-12));

    EnergyTrace trace;
    trace.dt = dt;
    trace.scheme = "implicit_midpoint";
    trace.samples.reserve(static_cast<size_t>(n_steps / sample_every) + 2);

    StateVector s = s0;
    double e = energy(op, s);
    trace.samples.push_back({0.0, e, dissipation_rate(op, s)});

    for (long k = 0; k < n_steps; ++k) {
        StateVector next = stepper.step(s);
        const double e_next = energy(op, next);
        const StateVector mid{0.5 * (s.u + next.u), 0.5 * (s.v + next.v)};
        const double balance = std::abs(e_next - e + dt * dissipation_rate(op, mid));
        trace.max_balance_residual = std::max(trace.max_balance_residual, balance);
        s = std::move(next);
        e = e_next;
        if ((k + 1) % sample_every == 0 || k + 1 == n_steps)
            trace.samples.push_back({(k + 1) * dt, e, dissipation_rate(op, s)});
    }
    return trace;
}

}  // namespace bresse
