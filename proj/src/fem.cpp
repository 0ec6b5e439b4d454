#include "bresse/fem.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "bresse/quadrature.hpp"

namespace bresse {

namespace {

// A strain expression sum_F coef_F(x) * field_F, with coef either the shape
// value N or its derivative dN, scaled by a constant. Terms with an exactly
// zero scale are dropped at build time so decoupled blocks stay bitwise zero.
struct StrainTerm {
    Field field;
    bool derivative;
    double scale;
};

using StrainExpr = std::vector<StrainTerm>;

void add_term(StrainExpr& expr, Field f, bool derivative, double scale) {
    if (scale != 0.0) expr.push_back({f, derivative, scale});
}

// Weight of one strain component: a constant or a damping profile.
struct Weight {
    double constant = 0.0;
    const DampingProfile* profile = nullptr;

    double operator()(double x) const { return profile ? profile->eval(x) : constant; }
    int degree() const { return profile ? profile->max_degree() : 0; }
    bool zero() const { return profile ? profile->identically_zero() : constant == 0.0; }
};

// The three strain combinations of the beam model:
//   e1 = phi_x + psi + ell w,  e2 = psi_x,  e3 = w_x - ell phi.
std::array<StrainExpr, 3> strain_expressions(double ell) {
    std::array<StrainExpr, 3> out;
    add_term(out[0], Field::Phi, true, 1.0);
    add_term(out[0], Field::Psi, false, 1.0);
    add_term(out[0], Field::W, false, ell);
    add_term(out[1], Field::Psi, true, 1.0);
    add_term(out[2], Field::W, true, 1.0);
    add_term(out[2], Field::Phi, false, -ell);
    return out;
}

// sum_s int w_s(x) e_s(test) e_s(trial) dx over the whole mesh, assembled
// into a full (3 n_nodes)^2 matrix with field-major dof ordering.
Matrix assemble_strain_form(const Mesh& mesh, const std::array<Weight, 3>& weights,
                            double ell) {
    const int m = mesh.n_nodes();
    Matrix A = Matrix::Zero(3 * m, 3 * m);
    const auto strains = strain_expressions(ell);

    int max_deg = 0;
    for (const auto& w : weights) max_deg = std::max(max_deg, w.degree());
    const int q = gauss_points_for_degree(max_deg + 2);

    for (int e = 0; e < mesh.n_elements(); ++e) {
        const double xa = mesh.nodes[e];
        const double xb = mesh.nodes[e + 1];
        const double h = xb - xa;
        const auto rule = gauss_legendre(q, xa, xb);
        for (int g = 0; g < q; ++g) {
            const double x = rule.points[g];
            const double wq = rule.weights[g];
            const double N[2] = {(xb - x) / h, (x - xa) / h};
            const double dN[2] = {-1.0 / h, 1.0 / h};
            for (int s = 0; s < 3; ++s) {
                if (weights[s].zero()) continue;
                const double ws = wq * weights[s](x);
                for (const auto& ta : strains[s]) {
                    for (const auto& tb : strains[s]) {
                        const double cc = ws * ta.scale * tb.scale;
                        for (int a = 0; a < 2; ++a) {
                            const double va = ta.derivative ? dN[a] : N[a];
                            const int row = static_cast<int>(ta.field) * m + e + a;
                            for (int b = 0; b < 2; ++b) {
                                const double vb = tb.derivative ? dN[b] : N[b];
                                A(row, static_cast<int>(tb.field) * m + e + b) +=
                                    cc * va * vb;
                            }
                        }
                    }
                }
            }
        }
    }
    return A;
}

// blockdiag of weighted P1 mass matrices, one block per field.
Matrix assemble_mass_form(const Mesh& mesh, const std::array<Weight, 3>& weights) {
    const int m = mesh.n_nodes();
    Matrix A = Matrix::Zero(3 * m, 3 * m);
    int max_deg = 0;
    for (const auto& w : weights) max_deg = std::max(max_deg, w.degree());
    const int q = gauss_points_for_degree(max_deg + 2);

    for (int e = 0; e < mesh.n_elements(); ++e) {
        const double xa = mesh.nodes[e];
        const double xb = mesh.nodes[e + 1];
        const double h = xb - xa;
        const auto rule = gauss_legendre(q, xa, xb);
        for (int g = 0; g < q; ++g) {
            const double x = rule.points[g];
            const double wq = rule.weights[g];
            const double N[2] = {(xb - x) / h, (x - xa) / h};
            for (int f = 0; f < 3; ++f) {
                if (weights[f].zero()) continue;
                const double wf = wq * weights[f](x);
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        A(f * m + e + a, f * m + e + b) += wf * N[a] * N[b];
            }
        }
    }
    return A;
}

Vector nodal_integral_weights(const Mesh& mesh) {
    Vector w = Vector::Zero(mesh.n_nodes());
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const double h = mesh.nodes[e + 1] - mesh.nodes[e];
        w[e] += 0.5 * h;
        w[e + 1] += 0.5 * h;
    }
    return w;
}

// Selection of interior nodes: the Dirichlet trial space.
Matrix dirichlet_basis(int n_nodes) {
    Matrix Z = Matrix::Zero(n_nodes, n_nodes - 2);
    for (int i = 0; i < n_nodes - 2; ++i) Z(i + 1, i) = 1.0;
    return Z;
}

// Orthonormal basis of { x : m'x = 0 } from the Householder reflector
// that maps m onto a coordinate axis.
Matrix mean_zero_basis(const Vector& m) {
    const int n = static_cast<int>(m.size());
    Vector v = m;
    v[0] += (m[0] >= 0.0 ? 1.0 : -1.0) * m.norm();
    const Matrix H = Matrix::Identity(n, n) - (2.0 / v.squaredNorm()) * (v * v.transpose());
    return H.rightCols(n - 1);
}

Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> modal_solver(const DiscreteOperator& op) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(op.stiffness(), op.mass());
    if (solver.info() != Eigen::Success)
        throw NumericalError("undamped modal eigensolver failed to converge");
    return solver;
}

}  // namespace

Vector DiscreteOperator::field_to_nodal(Field f, const Vector& coords) const {
    return basis_[static_cast<int>(f)] * coords;
}

Vector DiscreteOperator::field_from_nodal(Field f, const Vector& nodal) const {
    const Matrix& Z = basis_[static_cast<int>(f)];
    if (f == Field::Phi || cfg_.bc == BoundaryCondition::FullDirichlet)
        return Z.transpose() * nodal;
    return Z.transpose() * mean_zero_project(nodal, weights_);
}

NodalFields DiscreteOperator::to_nodal(const StateVector& s) const {
    NodalFields out;
    auto part = [this](const Vector& x, Field f) {
        return field_to_nodal(f, x.segment(field_offset(f), field_dim(f)));
    };
    out.phi = part(s.u, Field::Phi);
    out.psi = part(s.u, Field::Psi);
    out.w = part(s.u, Field::W);
    out.phi_t = part(s.v, Field::Phi);
    out.psi_t = part(s.v, Field::Psi);
    out.w_t = part(s.v, Field::W);
    return out;
}

StateVector DiscreteOperator::from_nodal(const NodalFields& fields) const {
    StateVector s;
    s.u.resize(displacement_dofs());
    s.v.resize(displacement_dofs());
    auto put = [this](Vector& x, Field f, const Vector& nodal) {
        x.segment(field_offset(f), field_dim(f)) = field_from_nodal(f, nodal);
    };
    put(s.u, Field::Phi, fields.phi);
    put(s.u, Field::Psi, fields.psi);
    put(s.u, Field::W, fields.w);
    put(s.v, Field::Phi, fields.phi_t);
    put(s.v, Field::Psi, fields.psi_t);
    put(s.v, Field::W, fields.w_t);
    return s;
}

DiscreteOperator assemble(const ScenarioConfig& cfg) {
    ensure_valid(cfg);
    DiscreteOperator op;
    op.cfg_ = cfg;

    std::vector<double> breakpoints;
    for (int i = 1; i <= 3; ++i) {
        const auto bps = cfg.damping.profile(i).breakpoints();
        breakpoints.insert(breakpoints.end(), bps.begin(), bps.end());
    }
    op.mesh_ = Mesh::refined(cfg.run.n_elements, cfg.params.length, breakpoints);
    const Mesh& mesh = op.mesh_;
    const int m = mesh.n_nodes();

    const auto& p = cfg.params;
    const Matrix M_full =
        assemble_mass_form(mesh, {Weight{p.rho1}, Weight{p.rho2}, Weight{p.rho1}});
    const Matrix K_full =
        assemble_strain_form(mesh, {Weight{p.k1}, Weight{p.k2}, Weight{p.k3}}, p.ell);

    const std::array<Weight, 3> damping_weights = {
        Weight{0.0, &cfg.damping.d1}, Weight{0.0, &cfg.damping.d2},
        Weight{0.0, &cfg.damping.d3}};
    const Matrix C_full = cfg.damping.model == DampingModel::KelvinVoigt
                              ? assemble_strain_form(mesh, damping_weights, p.ell)
                              : assemble_mass_form(mesh, damping_weights);

    op.weights_ = nodal_integral_weights(mesh);
    op.basis_[0] = dirichlet_basis(m);
    if (cfg.bc == BoundaryCondition::FullDirichlet) {
        op.basis_[1] = dirichlet_basis(m);
        op.basis_[2] = dirichlet_basis(m);
    } else {
        op.basis_[1] = mean_zero_basis(op.weights_);
        op.basis_[2] = op.basis_[1];
    }
    for (int f = 0; f < 3; ++f) op.dim_[f] = static_cast<int>(op.basis_[f].cols());
    op.offset_[0] = 0;
    op.offset_[1] = op.dim_[0];
    op.offset_[2] = op.dim_[0] + op.dim_[1];
    const int n = op.dim_[0] + op.dim_[1] + op.dim_[2];

    // Constraint reduction field-block by field-block; the full matrices
    // only couple fields within the same node neighbourhood, so this stays
    // at 3x3 products of single-field size.
    auto reduce = [&](const Matrix& full) {
        Matrix out(n, n);
        for (int f = 0; f < 3; ++f)
            for (int g = 0; g < 3; ++g)
                out.block(op.offset_[f], op.offset_[g], op.dim_[f], op.dim_[g]) =
                    op.basis_[f].transpose() * full.block(f * m, g * m, m, m) *
                    op.basis_[g];
        return out;
    };
    op.M_ = reduce(M_full);
    op.K_ = reduce(K_full);
    op.C_ = reduce(C_full);

    op.llt_M_.compute(op.M_);
    if (op.llt_M_.info() != Eigen::Success)
        throw NumericalError("kinetic Gram is not positive definite (assembly bug)");
    op.llt_K_.compute(op.K_);
    if (op.llt_K_.info() != Eigen::Success)
        throw NumericalError(
            "stiffness is not positive definite on the constrained space "
            "(dnnd resonance L = n*pi/ell?)");
    return op;
}

double energy(const DiscreteOperator& op, const StateVector& s) {
    if (s.u.size() != op.displacement_dofs() || s.v.size() != op.displacement_dofs())
        throw std::invalid_argument("energy: state dimension mismatch");
    return 0.5 * (s.v.dot(op.mass() * s.v) + s.u.dot(op.stiffness() * s.u));
}

double dissipation_rate(const DiscreteOperator& op, const StateVector& s) {
    if (s.v.size() != op.displacement_dofs())
        throw std::invalid_argument("dissipation_rate: state dimension mismatch");
    return s.v.dot(op.damping() * s.v);
}

double energy_dot(const DiscreteOperator& op, const StateVector& a, const StateVector& b) {
    return a.u.dot(op.stiffness() * b.u) + a.v.dot(op.mass() * b.v);
}

StateVector apply_generator(const DiscreteOperator& op, const StateVector& s) {
    if (s.u.size() != op.displacement_dofs() || s.v.size() != op.displacement_dofs())
        throw std::invalid_argument("apply_generator: state dimension mismatch");
    StateVector out;
    out.u = s.v;
    out.v = op.mass_factor().solve(-(op.stiffness() * s.u + op.damping() * s.v));
    return out;
}

StateVector modal_state(const DiscreteOperator& op, int mode) {
    const int n = op.displacement_dofs();
    if (mode < 1 || mode > n)
        throw std::invalid_argument("modal_state: mode index out of range");
    const auto solver = modal_solver(op);
    Vector u = solver.eigenvectors().col(mode - 1);
    int imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    if (u[imax] < 0.0) u = -u;
    StateVector s{u, Vector::Zero(n)};
    const double e = energy(op, s);
    s.u /= std::sqrt(e);
    return s;
}

StateVector random_high_freq_state(const DiscreteOperator& op, std::uint64_t seed) {
    const auto solver = modal_solver(op);
    const int n = op.displacement_dofs();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector s{Vector::Zero(n), Vector::Zero(n)};
    for (int i = n / 2; i < n; ++i) {
        const Vector mode = solver.eigenvectors().col(i);
        s.u += gauss(rng) * mode;
        s.v += gauss(rng) * mode;
    }
    const double e = energy(op, s);
    if (!(e > 0.0)) throw NumericalError("random state has vanishing energy");
    s.u /= std::sqrt(e);
    s.v /= std::sqrt(e);
    return s;
}

NormEquivalence norm_equivalence_constants(const DiscreteOperator& op) {
    const Mesh& mesh = op.mesh();
    const int m = mesh.n_nodes();
    // Plain H1-seminorm Gram: one unweighted stiffness block per field.
    Matrix H_full = Matrix::Zero(3 * m, 3 * m);
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const double h = mesh.nodes[e + 1] - mesh.nodes[e];
        for (int f = 0; f < 3; ++f) {
            const int base = f * m + e;
            H_full(base, base) += 1.0 / h;
            H_full(base, base + 1) -= 1.0 / h;
            H_full(base + 1, base) -= 1.0 / h;
            H_full(base + 1, base + 1) += 1.0 / h;
        }
    }
    const int n = op.displacement_dofs();
    Matrix Z = Matrix::Zero(3 * m, n);
    for (int f = 0; f < 3; ++f) {
        const Field fld = static_cast<Field>(f);
        Z.block(f * m, op.field_offset(fld), m, op.field_dim(fld)) = op.field_basis(fld);
    }
    const Matrix H = Z.transpose() * H_full * Z;
    Eigen::LLT<Matrix> llt(H);
    if (llt.info() != Eigen::Success)
        throw NumericalError("H1-seminorm Gram singular on constrained space");
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(op.stiffness(), H);
    if (solver.info() != Eigen::Success)
        throw NumericalError("norm-equivalence eigensolver failed");
    return {solver.eigenvalues().maxCoeff(), solver.eigenvalues().minCoeff()};
}

Vector undamped_frequencies(const DiscreteOperator& op) {
    return modal_solver(op).eigenvalues().cwiseMax(0.0).cwiseSqrt();
}

Vector mean_zero_project(const Vector& nodal, const Vector& weights) {
    return nodal - Vector::Constant(nodal.size(),
                                    weights.dot(nodal) / weights.sum());
}

}  // namespace bresse
