#pragma once

#include <Eigen/Cholesky>
#include <cstdint>

#include "bresse/mesh.hpp"
#include "bresse/model.hpp"
#include "bresse/types.hpp"

namespace bresse {

/// First-order state (u, v) in constrained coordinates: u stacks the
/// (phi, psi, w) displacement dofs, v the matching velocities.
struct StateVector {
    Vector u;
    Vector v;
};

/// Nodal values of the six physical fields on the mesh.
struct NodalFields {
    Vector phi, phi_t, psi, psi_t, w, w_t;
};

enum class Field : int { Phi = 0, Psi = 1, W = 2 };

/// Discrete generator of the damped beam: kinetic Gram M, elastic
/// stiffness K, damping matrix C, all on the boundary-constrained space,
/// together with the constraint bases and cached factorizations. Immutable
/// after assembly; safe to share across threads.
class DiscreteOperator {
public:
    const Matrix& mass() const { return M_; }
    const Matrix& stiffness() const { return K_; }
    const Matrix& damping() const { return C_; }
    const Eigen::LLT<Matrix>& mass_factor() const { return llt_M_; }
    const Eigen::LLT<Matrix>& stiffness_factor() const { return llt_K_; }

    const Mesh& mesh() const { return mesh_; }
    const ScenarioConfig& config() const { return cfg_; }

    int displacement_dofs() const { return static_cast<int>(K_.rows()); }
    int state_dim() const { return 2 * displacement_dofs(); }
    int field_dim(Field f) const { return dim_[static_cast<int>(f)]; }
    int field_offset(Field f) const { return offset_[static_cast<int>(f)]; }

    /// Nodal integral weights m_i = int N_i dx (one entry per mesh node).
    const Vector& integral_weights() const { return weights_; }

    /// Constrained-coordinate basis of one field: nodal = Z * coords.
    const Matrix& field_basis(Field f) const { return basis_[static_cast<int>(f)]; }

    Vector field_to_nodal(Field f, const Vector& coords) const;
    /// Mean-zero / boundary projection of nodal values, then coordinates.
    Vector field_from_nodal(Field f, const Vector& nodal) const;

    NodalFields to_nodal(const StateVector& s) const;
    StateVector from_nodal(const NodalFields& fields) const;

private:
    friend DiscreteOperator assemble(const ScenarioConfig& cfg);

    ScenarioConfig cfg_;
    Mesh mesh_;
    int dim_[3] = {0, 0, 0};
    int offset_[3] = {0, 0, 0};
    Matrix basis_[3];  // per-field nodal-from-coords maps
    Vector weights_;
    Matrix M_, K_, C_;
    Eigen::LLT<Matrix> llt_M_, llt_K_;
};

/// P1 discretization of the beam on the scenario's mesh. Throws
/// ConfigError for invalid scenarios and NumericalError when the
/// constrained stiffness fails to be positive definite.
DiscreteOperator assemble(const ScenarioConfig& cfg);

/// E = (v' M v + u' K u) / 2.
double energy(const DiscreteOperator& op, const StateVector& s);

/// D = v' C v, the instantaneous dissipated power.
double dissipation_rate(const DiscreteOperator& op, const StateVector& s);

/// Energy inner product <s1, s2>_G with G = blockdiag(K, M).
double energy_dot(const DiscreteOperator& op, const StateVector& a, const StateVector& b);

/// Matrix-free action of the generator: (u, v) -> (v, M^{-1}(-K u - C v)).
StateVector apply_generator(const DiscreteOperator& op, const StateVector& s);

/// m-th undamped eigenmode (m is 1-based), zero velocity, unit energy.
StateVector modal_state(const DiscreteOperator& op, int mode);

/// Reproducible unit-energy state with modal content concentrated in the
/// upper half of the resolved frequencies.
StateVector random_high_freq_state(const DiscreteOperator& op, std::uint64_t seed);

/// Extremal generalized Rayleigh quotients of K against the H1-seminorm
/// Gram: returns (c0_h, c1_h) = (max, min); both strictly positive away
/// from constraint bugs.
struct NormEquivalence {
    double c0 = 0.0;
    double c1 = 0.0;
};
NormEquivalence norm_equivalence_constants(const DiscreteOperator& op);

/// Undamped modal frequencies sqrt(eig(K, M)), ascending.
Vector undamped_frequencies(const DiscreteOperator& op);

/// Weighted mean-subtraction x - (m'x / m'1) 1; the constraint projector
/// used for the Neumann fields.
Vector mean_zero_project(const Vector& nodal, const Vector& weights);

}  // namespace bresse
