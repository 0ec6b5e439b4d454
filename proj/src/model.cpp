#include "bresse/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bresse/quadrature.hpp"
#include "bresse/types.hpp"

namespace bresse {

double WaveSpeeds::min() const { return std::min({c1, c2, c3}); }
double WaveSpeeds::max() const { return std::max({c1, c2, c3}); }

WaveSpeeds wave_speeds(const BeamParameters& p) {
    return {std::sqrt(p.k1 / p.rho1), std::sqrt(p.k2 / p.rho2), std::sqrt(p.k3 / p.rho1)};
}

std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::FullDirichlet ? "dddd" : "dnnd";
}

namespace {

void check_positive(std::vector<Violation>& out, const std::string& field, double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        out.push_back({field, field + " must be strictly positive, got " +
                                  std::to_string(value)});
}

void check_profile(std::vector<Violation>& out, const std::string& name,
                   const DampingProfile& profile, double length) {
    const auto& pieces = profile.pieces();
    if (pieces.empty()) {
        out.push_back({name, name + " has no pieces"});
        return;
    }
    if (std::abs(pieces.front().x0) > 1e-12 * length)
        out.push_back({name, name + " does not start at 0"});
    if (std::abs(pieces.back().x1 - length) > 1e-12 * length)
        out.push_back({name, name + " does not end at L"});
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        const double gap = pieces[i + 1].x0 - pieces[i].x1;
        if (gap > 1e-12 * length) {
            std::ostringstream oss;
            oss << name << " has a gap (" << pieces[i].x1 << "," << pieces[i + 1].x0 << ")";
            out.push_back({name, oss.str()});
        } else if (gap < -1e-12 * length) {
            std::ostringstream oss;
            oss << name << " pieces overlap near x=" << pieces[i].x1;
            out.push_back({name, oss.str()});
        }
    }
    for (const auto& piece : pieces) {
        if (piece.x1 <= piece.x0) {
            out.push_back({name, name + " has a piece with nonpositive width"});
            continue;
        }
        // Nonnegativity at the quadrature points used by assembly, plus ends.
        auto rule = gauss_legendre(gauss_points_for_degree(piece.degree() + 2), piece.x0,
                                   piece.x1);
        rule.points.push_back(piece.x0);
        rule.points.push_back(piece.x1);
        for (double x : rule.points) {
            if (piece.eval(x) < 0.0) {
                std::ostringstream oss;
                oss << name << " is negative at x=" << x << " (value " << piece.eval(x) << ")";
                out.push_back({name, oss.str()});
                break;
            }
        }
    }
}

}  // namespace

std::vector<Violation> validate_scenario(const ScenarioConfig& cfg) {
    std::vector<Violation> out;
    const auto& p = cfg.params;
    check_positive(out, "beam.rho1", p.rho1);
    check_positive(out, "beam.rho2", p.rho2);
    check_positive(out, "beam.k1", p.k1);
    check_positive(out, "beam.k2", p.k2);
    check_positive(out, "beam.k3", p.k3);
    // ell = 0 is the uncoupled straight-beam limit and stays admissible.
    if (!(p.ell >= 0.0) || !std::isfinite(p.ell))
        out.push_back({"beam.ell", "beam.ell must be nonnegative, got " +
                                       std::to_string(p.ell)});
    check_positive(out, "beam.length", p.length);

    if (out.empty()) {
        check_profile(out, "damping.d1", cfg.damping.d1, p.length);
        check_profile(out, "damping.d2", cfg.damping.d2, p.length);
        check_profile(out, "damping.d3", cfg.damping.d3, p.length);

        if (cfg.bc == BoundaryCondition::DirichletNeumannNeumann) {
            // The energy expression degenerates when L = n*pi/ell; forbid
            // equality up to a 1e-9 relative margin.
            for (int n = 1;; ++n) {
                const double resonant = n * kPi / p.ell;
                if (resonant > p.length * (1.0 + 1e-9)) break;
                if (std::abs(p.length - resonant) <= 1e-9 * p.length) {
                    std::ostringstream oss;
                    oss << "L = n*pi/ell for n=" << n << " (dnnd inadmissible)";
                    out.push_back({"bc", oss.str()});
                }
            }
        }
    }

    if (cfg.run.n_elements < 4)
        out.push_back({"run.n_elements", "n_elements must be at least 4"});
    if (cfg.run.dt < 0.0) out.push_back({"run.dt", "dt must be positive (or 0 for auto)"});
    if (!(cfg.run.t_max > 0.0)) out.push_back({"run.tmax", "tmax must be positive"});
    if (cfg.run.sample_every < 1)
        out.push_back({"run.sample_every", "sample_every must be at least 1"});
    if (cfg.run.lambda_min < 0.0 || cfg.run.lambda_max < 0.0)
        out.push_back({"run.lambda", "lambda bounds must be positive (or 0 for auto)"});
    if (cfg.run.lambda_min > 0.0 && cfg.run.lambda_max > 0.0 &&
        cfg.run.lambda_min >= cfg.run.lambda_max)
        out.push_back({"run.lambda", "lambda_min must be below lambda_max"});
    if (cfg.run.sweep_samples < 2)
        out.push_back({"run.samples", "sweep needs at least two samples"});
    return out;
}

void ensure_valid(const ScenarioConfig& cfg) {
    const auto violations = validate_scenario(cfg);
    if (violations.empty()) return;
    std::ostringstream oss;
    oss << "invalid scenario:";
    for (const auto& v : violations) oss << "\n  - " << v.message;
    throw ConfigError(oss.str());
}

double eval_damping(const DampingProfile& profile, double x) { return profile.eval(x); }

std::string to_string(DecayRegime regime) {
    switch (regime) {
        case DecayRegime::Analytic: return "analytic";
        case DecayRegime::Exponential: return "exponential";
        case DecayRegime::PolynomialOneOverT: return "polynomial_1_over_t";
        case DecayRegime::PolynomialOneOverSqrtT: return "polynomial_1_over_sqrt_t";
        case DecayRegime::Unknown: return "unknown";
    }
    return "unknown";
}

DecayRegime expected_class(const DampingSpec& spec, ProfileSmoothness smoothness) {
    if (spec.model != DampingModel::KelvinVoigt)
        throw ConfigError("expected_class covers the Kelvin-Voigt model only");

    const bool all_global = spec.d1.min_value() > 0.0 && spec.d2.min_value() > 0.0 &&
                            spec.d3.min_value() > 0.0;
    if (all_global) return DecayRegime::Analytic;

    const auto common = intersect_intervals(
        intersect_intervals(spec.d1.positive_support(), spec.d2.positive_support()),
        spec.d3.positive_support());
    const bool common_window =
        std::any_of(common.begin(), common.end(),
                    [](const Interval& iv) { return iv.length() > 0.0; });
    if (common_window) {
        return smoothness == ProfileSmoothness::Lipschitz ? DecayRegime::Exponential
                                                          : DecayRegime::PolynomialOneOverT;
    }

    const bool d2_local = !spec.d2.positive_support().empty();
    if (spec.d1.identically_zero() && spec.d3.identically_zero() && d2_local)
        return DecayRegime::PolynomialOneOverSqrtT;

    return DecayRegime::Unknown;
}

DecayRegime expected_class(const DampingSpec& spec) {
    const bool lipschitz = spec.d1.lipschitz() && spec.d2.lipschitz() && spec.d3.lipschitz();
    return expected_class(spec, lipschitz ? ProfileSmoothness::Lipschitz
                                          : ProfileSmoothness::NonSmooth);
}

}  // namespace bresse
