#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "bresse/witness.hpp"

using namespace bresse;

namespace {

const BeamParameters kOnes{1, 1, 1, 1, 1, 1, kPi};

// 3x3 Cramer-rule oracle with the amplitude system rebuilt from scratch.
Eigen::Vector3cd cramer_oracle(int n, const BeamParameters& p) {
    const double mu = n * kPi / p.length;
    const double lambda = witness_frequency(n, p);
    const Complex dk3(p.k3, lambda);
    Eigen::Matrix3cd m;
    m << p.k1 * mu * mu - lambda * lambda * p.rho1 + p.ell * p.ell * dk3, p.k1 * mu,
        (p.k1 + dk3) * p.ell * mu, p.k1 * mu, p.k1, p.ell * p.k1,
        (p.k1 + dk3) * p.ell * mu, p.ell * p.k1,
        p.k3 * mu * mu - lambda * lambda * p.rho1 + p.ell * p.ell * p.k1;
    const Eigen::Vector3cd rhs(0.0, p.rho2, 0.0);
    const Complex det = m.determinant();
    Eigen::Vector3cd out;
    for (int j = 0; j < 3; ++j) {
        Eigen::Matrix3cd mj = m;
        mj.col(j) = rhs;
        out[j] = mj.determinant() / det;
    }
    return out;
}

// Trapezoid quadrature of the energy-norm integrands over [0, L].
double trapezoid_state_norm(int n, const BeamParameters& p,
                            const WitnessCoefficients& c) {
    const double mu = n * kPi / p.length;
    const double lambda = witness_frequency(n, p);
    const int points = 10000;
    const double h = p.length / points;
    double sum = 0.0;
    for (int i = 0; i <= points; ++i) {
        const double x = i * h;
        const double s = std::sin(mu * x), co = std::cos(mu * x);
        const Complex v1 = c.a * s, v3 = c.b * co, v5 = c.c * co;
        const Complex v1x = c.a * mu * co, v3x = -c.b * mu * s, v5x = -c.c * mu * s;
        const Complex il(0.0, lambda);
        double integrand =
            p.rho1 * std::norm(il * v1) + p.rho2 * std::norm(il * v3) +
            p.rho1 * std::norm(il * v5) + p.k1 * std::norm(v1x + v3 + p.ell * v5) +
            p.k2 * std::norm(v3x) + p.k3 * std::norm(v5x - p.ell * v1);
        sum += (i == 0 || i == points) ? 0.5 * integrand : integrand;
    }
    return std::sqrt(sum * h);
}

double trapezoid_residual_norm(int n, const BeamParameters& p,
                               const WitnessCoefficients& c) {
    const double mu = n * kPi / p.length;
    const double lambda = witness_frequency(n, p);
    const int points = 10000;
    const double h = p.length / points;
    double sum = 0.0;
    for (int i = 0; i <= points; ++i) {
        const double x = i * h;
        const double co = std::cos(mu * x);
        const Complex il(0.0, lambda);
        // slots 4 and 6 of (i lambda - A)V: rho2 f4 - il v3_xx and il v5_xx
        const Complex slot4 = p.rho2 * co - il * (-c.b * mu * mu * co);
        const Complex slot6 = il * (-c.c * mu * mu * co);
        const double integrand = p.rho2 * std::norm(slot4) + p.rho1 * std::norm(slot6);
        sum += (i == 0 || i == points) ? 0.5 * integrand : integrand;
    }
    return std::sqrt(sum * h);
}

}  // namespace

TEST_CASE("certificate frequency formula") {
    BeamParameters p = kOnes;
    CHECK(witness_frequency(3, p) == doctest::Approx(3.0).epsilon(1e-14));

    p.rho2 = 2.0;
    p.k2 = 8.0;
    CHECK(witness_frequency(1, p) == doctest::Approx(2.0).epsilon(1e-14));

    // linear in n
    p = {1.7, 0.4, 2.2, 3.1, 0.9, 0.6, 2.5};
    for (int n : {1, 2, 5, 11})
        CHECK(witness_frequency(2 * n, p) ==
              doctest::Approx(2.0 * witness_frequency(n, p)).epsilon(1e-14));

    CHECK_THROWS_AS(witness_frequency(0, p), std::invalid_argument);
}

TEST_CASE("the bending-branch cancellation holds to rounding") {
    for (const auto& p : {kOnes, BeamParameters{2, 3, 5, 7, 11, 1.3, 2.0}}) {
        for (int n : {1, 4, 17, 64}) {
            const double mu = n * kPi / p.length;
            const double lambda = witness_frequency(n, p);
            CHECK(std::abs(p.k2 * mu * mu - p.rho2 * lambda * lambda) <=
                  1e-12 * p.k2 * mu * mu);
        }
    }
}

TEST_CASE("amplitude solve: residual contract and Cramer oracle") {
    for (int n : {1, 4, 20}) {
        const auto c = witness_coefficients_exact(n, kOnes);
        CHECK(c.solve_residual <= 1e-12);
        CHECK(c.condition >= 1.0);
    }
    const auto c = witness_coefficients_exact(4, kOnes);
    const auto oracle = cramer_oracle(4, kOnes);
    CHECK(std::abs(c.a - oracle[0]) <= 1e-10 * std::abs(oracle[1]));
    CHECK(std::abs(c.b - oracle[1]) <= 1e-10 * std::abs(oracle[1]));
    CHECK(std::abs(c.c - oracle[2]) <= 1e-10 * std::abs(oracle[1]));
}

TEST_CASE("leading-order amplitudes: structure in n") {
    const BeamParameters p{2, 1, 3, 5, 7, 1.3, 2.0};
    const auto lead_n = witness_coefficients_asymptotic(6, p);
    const auto lead_2n = witness_coefficients_asymptotic(12, p);
    CHECK(std::abs(lead_2n.a) == doctest::Approx(0.5 * std::abs(lead_n.a)).epsilon(1e-13));
    CHECK(std::abs(lead_2n.c) == doctest::Approx(0.5 * std::abs(lead_n.c)).epsilon(1e-13));
    CHECK(lead_2n.b == lead_n.b);

    // k2 rho1 = rho2 k3 wipes out the leading vertical amplitude
    BeamParameters balanced = kOnes;
    CHECK(std::abs(witness_coefficients_asymptotic(5, balanced).a) == 0.0);
}

TEST_CASE("exact amplitudes approach the leading orders") {
    // n |error| stays bounded across the dyadic range: remainders are
    // O(1/n^2) for the vertical/longitudinal pair and O(1/n) for the shear
    // amplitude.
    for (const auto& p : {kOnes, BeamParameters{2, 1, 3, 5, 7, 1.3, 2.0}}) {
        double first_a = -1.0, first_b = -1.0, first_c = -1.0;
        for (int n : {8, 16, 32, 64}) {
            const auto exact = witness_coefficients_exact(n, p);
            const auto lead = witness_coefficients_asymptotic(n, p);
            const double ea = n * std::abs(exact.a - lead.a);
            const double eb = n * std::abs(exact.b - lead.b);
            const double ec = n * std::abs(exact.c - lead.c);
            if (first_a < 0) {
                first_a = ea;
                first_b = eb;
                first_c = ec;
            }
            CHECK(ea <= 1.05 * first_a + 1e-12);
            CHECK(eb <= 1.05 * first_b + 1e-12);
            CHECK(ec <= 1.05 * first_c + 1e-12);
        }
    }

    // shear amplitude at n = 20 sits within O(1/n) of its limit
    const auto exact = witness_coefficients_exact(20, kOnes);
    const auto lead = witness_coefficients_asymptotic(20, kOnes);
    CHECK(std::abs(exact.b - lead.b) <= 4.0 / 20.0);
}

TEST_CASE("closed-form norms match a dense quadrature oracle") {
    for (const auto& p : {kOnes, BeamParameters{2, 1, 3, 5, 7, 1.3, 2.0}}) {
        for (int n = 1; n <= 8; ++n) {
            const auto c = witness_coefficients_exact(n, p);
            const auto norms = witness_norms(n, p);
            CHECK(norms.norm_state ==
                  doctest::Approx(trapezoid_state_norm(n, p, c)).epsilon(1e-6));
            CHECK(norms.norm_residual ==
                  doctest::Approx(trapezoid_residual_norm(n, p, c)).epsilon(1e-6));
        }
    }
}

TEST_CASE("state norm dominates the shear-velocity term") {
    for (int n = 1; n <= 32; ++n) {
        const auto c = witness_coefficients_exact(n, kOnes);
        const auto norms = witness_norms(n, kOnes);
        const double lambda = witness_frequency(n, kOnes);
        CHECK(norms.norm_state >=
              std::sqrt(kOnes.rho2) * std::abs(c.b) * lambda *
                  std::sqrt(kOnes.length / 2.0) * (1.0 - 1e-12));
    }
}

TEST_CASE("residual norm follows the two populated slots") {
    const int n = 6;
    const auto c = witness_coefficients_exact(n, kOnes);
    const auto norms = witness_norms(n, kOnes);
    const double mu = n * kPi / kOnes.length;
    const double lambda = witness_frequency(n, kOnes);
    const Complex il(0.0, lambda);
    const Complex slot4 = kOnes.rho2 + il * mu * mu * c.b;
    const Complex slot6 = il * mu * mu * c.c;
    const double expected = std::sqrt(
        0.5 * kOnes.length *
        (kOnes.rho2 * std::norm(slot4) + kOnes.rho1 * std::norm(slot6)));
    CHECK(norms.norm_residual == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ansatz fields satisfy the constrained-space requirements") {
    // cosine shear/longitudinal profiles have zero mean, the vertical sine
    // vanishes at both ends, and the cosine slopes vanish at both ends
    for (int n : {1, 3, 10}) {
        const double mu = n * kPi / kOnes.length;
        CHECK(std::abs(std::sin(mu * kOnes.length) / mu) <= 1e-12);  // int cos dx
        CHECK(std::abs(std::sin(mu * 0.0)) == 0.0);
        CHECK(std::abs(std::sin(mu * kOnes.length)) <= 1e-12);
        CHECK(std::abs(-mu * std::sin(mu * 0.0)) == 0.0);          // v3_x at 0
        CHECK(std::abs(-mu * std::sin(mu * kOnes.length)) <= mu * 1e-12);
    }
}

TEST_CASE("growth exponents over the dyadic family") {
    BeamParameters p = kOnes;
    p.ell = 0.5;  // the admissible certificate fixture
    const auto report = witness_series({4, 8, 16, 32, 64}, p);
    CHECK(report.p == doctest::Approx(1.0).epsilon(0.1));
    CHECK(report.q > 0.0);
    CHECK(report.lack_of_uniform_stability == (report.q - report.p < 0.0));

    // permutation of the index list does not move the fit
    const auto shuffled = witness_series({32, 4, 64, 8, 16}, p);
    CHECK(shuffled.p == doctest::Approx(report.p).epsilon(1e-12));
    CHECK(shuffled.q == doctest::Approx(report.q).epsilon(1e-12));

    CHECK_THROWS_AS(witness_series({4, 8, 16}, p), ConfigError);
}
