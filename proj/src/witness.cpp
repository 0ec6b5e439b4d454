#include "bresse/witness.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace bresse {

namespace {

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

// Rows of the amplitude system: the three field equations after the
// bending-resonance cancellation, with mu = n pi / L.
Matrix3c amplitude_matrix(double mu, double lambda, const BeamParameters& p) {
    const Complex damped_k3(p.k3, lambda);  // k3 + i lambda from the D3 = 1 damping
    Matrix3c m;
    m(0, 0) = p.k1 * mu * mu - lambda * lambda * p.rho1 + p.ell * p.ell * damped_k3;
    m(0, 1) = p.k1 * mu;
    m(0, 2) = (p.k1 + damped_k3) * p.ell * mu;
    m(1, 0) = p.k1 * mu;
    m(1, 1) = p.k1;
    m(1, 2) = p.ell * p.k1;
    m(2, 0) = (p.k1 + damped_k3) * p.ell * mu;
    m(2, 1) = p.ell * p.k1;
    m(2, 2) = p.k3 * mu * mu - lambda * lambda * p.rho1 + p.ell * p.ell * p.k1;
    return m;
}

}  // namespace

double witness_frequency(int n, const BeamParameters& params) {
    if (n < 1) throw std::invalid_argument("witness_frequency: n must be >= 1");
    return n * kPi * std::sqrt(params.rho2 * params.k2) / (params.length * params.rho2);
}

WitnessCoefficients witness_coefficients_exact(int n, const BeamParameters& params) {
    const double mu = n * kPi / params.length;
    const double lambda = witness_frequency(n, params);
    const Matrix3c m = amplitude_matrix(mu, lambda, params);
    const Vector3c rhs(0.0, params.rho2, 0.0);

    Eigen::PartialPivLU<Matrix3c> lu(m);
    const Vector3c x = lu.solve(rhs);

    const double det = std::abs(lu.determinant());
    const double scale = m.cwiseAbs().maxCoeff();
    if (!x.allFinite() || det < 1e-14 * scale * scale * scale) {
        std::ostringstream oss;
        oss << "amplitude system singular at n=" << n << " (|det|=" << det << ")";
        throw NumericalError(oss.str());
    }

    WitnessCoefficients out;
    out.a = x[0];
    out.b = x[1];
    out.c = x[2];
    out.solve_residual = (m * x - rhs).norm() / rhs.norm();
    out.condition = m.cwiseAbs().rowwise().sum().maxCoeff() *
                    m.inverse().cwiseAbs().rowwise().sum().maxCoeff();
    return out;
}

WitnessAsymptotics witness_coefficients_asymptotic(int n, const BeamParameters& params) {
    if (n < 1) throw std::invalid_argument("witness asymptotics: n must be >= 1");
    const auto& p = params;
    const double delta = (p.k2 * p.rho1 * p.rho1 - p.k3 * p.rho1 * p.rho2 +
                          p.rho2 * p.ell * p.ell);
    if (std::abs(delta) < 1e-300)
        throw NumericalError("witness asymptotics degenerate: "
                             "k2 rho1^2 - k3 rho1 rho2 + rho2 ell^2 vanishes");

    WitnessAsymptotics out;
    out.a = (p.k2 * p.rho1 - p.rho2 * p.k3) * p.rho2 * p.rho2 * p.length /
            (kPi * delta * p.k2 * n);
    out.b = p.rho2 *
            (p.k1 * p.k3 * p.rho2 * p.rho2 +
             ((-p.k1 - p.k3) * p.rho1 + p.ell * p.ell) * p.k2 * p.rho2 +
             p.k2 * p.k2 * p.rho1 * p.rho1) /
            (p.k1 * delta * p.k2);
    out.c = Complex(0.0, 1.0) * p.ell * p.rho2 * p.rho2 * p.length *
            std::sqrt(p.rho2 * p.k2) / (kPi * delta * p.k2 * n);
    return out;
}

WitnessNorms witness_norms(int n, const BeamParameters& params) {
    const auto coeffs = witness_coefficients_exact(n, params);
    const double mu = n * kPi / params.length;
    const double lambda = witness_frequency(n, params);
    const auto& p = params;
    const double half_l = 0.5 * p.length;

    // Energy norm of V = (v1, il v1, v3, il v3, v5, il v5) with
    // v1 = A sin(mu x), v3 = B cos(mu x), v5 = C cos(mu x).
    const Complex strain1 = coeffs.a * mu + coeffs.b + p.ell * coeffs.c;  // cos profile
    const Complex strain3 = coeffs.c * mu + p.ell * coeffs.a;             // -sin profile
    const double norm2 =
        half_l * (lambda * lambda *
                      (p.rho1 * std::norm(coeffs.a) + p.rho2 * std::norm(coeffs.b) +
                       p.rho1 * std::norm(coeffs.c)) +
                  p.k1 * std::norm(strain1) + p.k2 * mu * mu * std::norm(coeffs.b) +
                  p.k3 * std::norm(strain3));

    // Defect (i lambda - A)V = (0, 0, 0, rho2 f4 - il D2 v3_xx, 0, il D3 v5_xx):
    // only the two velocity slots are populated, weighted by rho2 and rho1.
    const Complex slot4 = p.rho2 + Complex(0.0, lambda) * mu * mu * coeffs.b;
    const Complex slot6 = Complex(0.0, lambda) * mu * mu * coeffs.c;
    const double res2 =
        half_l * (p.rho2 * std::norm(slot4) + p.rho1 * std::norm(slot6));

    return {std::sqrt(norm2), std::sqrt(res2)};
}

WitnessSample witness_sample(int n, const BeamParameters& params) {
    WitnessSample s;
    s.n = n;
    s.lambda = witness_frequency(n, params);
    const auto coeffs = witness_coefficients_exact(n, params);
    s.a = coeffs.a;
    s.b = coeffs.b;
    s.c = coeffs.c;
    s.solve_residual = coeffs.solve_residual;
    s.condition = coeffs.condition;
    const auto lead = witness_coefficients_asymptotic(n, params);
    s.a_lead = lead.a;
    s.b_lead = lead.b;
    s.c_lead = lead.c;
    const auto norms = witness_norms(n, params);
    s.norm_state = norms.norm_state;
    s.norm_residual = norms.norm_residual;
    return s;
}

WitnessGrowthReport witness_series(const std::vector<int>& n_list,
                                   const BeamParameters& params) {
    if (n_list.size() < 4)
        throw ConfigError("witness series needs at least 4 mode indices");

    WitnessGrowthReport report;
    report.samples.reserve(n_list.size());
    for (int n : n_list) report.samples.push_back(witness_sample(n, params));

    auto fit_exponent = [&](auto value) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& s : report.samples) {
            const double x = std::log(static_cast<double>(s.n));
            const double y = std::log(value(s));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double m = static_cast<double>(report.samples.size());
        return (m * sxy - sx * sy) / (m * sxx - sx * sx);
    };
    report.p = fit_exponent([](const WitnessSample& s) { return s.norm_state; });
    report.q = fit_exponent([](const WitnessSample& s) { return s.norm_residual; });
    report.lack_of_uniform_stability = report.q - report.p < 0.0;
    return report;
}

}  // namespace bresse
