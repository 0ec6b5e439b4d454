#pragma once

#include <string>
#include <vector>

namespace bresse {

/// Polynomial piece on [x0, x1], stored in the local coordinate t = x - x0
/// so that values at piece edges come out exact (no cancellation between
/// large expanded coefficients).
struct PolyPiece {
    double x0 = 0.0;
    double x1 = 0.0;
    std::vector<double> coeffs;  // value(x) = sum_k coeffs[k] * (x - x0)^k

    double eval(double x) const;
    int degree() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1; }
};

/// Closed interval with positive length.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// Nonnegative damping coefficient D(x) on [0, L], stored as an ordered
/// list of polynomial pieces that partition the beam. Constructors declare
/// whether the profile is Lipschitz at its interfaces; this is never
/// re-inferred from samples.
class DampingProfile {
public:
    DampingProfile() = default;

    static DampingProfile zero(double length);
    static DampingProfile global(double d0, double length);
    static DampingProfile indicator(double d0, double alpha, double beta, double length);
    /// Cubic ramps 0 -> d0 over [alpha, alpha+ramp] and d0 -> 0 over
    /// [beta-ramp, beta]; W^{1,inf} at every interface.
    static DampingProfile smoothstep(double d0, double alpha, double beta, double ramp,
                                     double length);
    static DampingProfile from_pieces(std::vector<PolyPiece> pieces, bool lipschitz);

    /// Value at x. At an interior breakpoint the left piece wins.
    /// Throws std::domain_error when x is outside [0, L].
    double eval(double x) const;

    const std::vector<PolyPiece>& pieces() const { return pieces_; }
    bool lipschitz() const { return lipschitz_; }
    double length() const { return pieces_.empty() ? 0.0 : pieces_.back().x1; }
    int max_degree() const;
    bool identically_zero() const;

    /// Interior breakpoints (piece boundaries strictly inside (0, L)).
    std::vector<double> breakpoints() const;

    /// Closure of {x : D(x) > 0} as a union of disjoint intervals,
    /// located by per-piece sampling plus bisection at the edges.
    std::vector<Interval> positive_support() const;

    /// min over a uniform sample of [0, L] (plus piece endpoints).
    double min_value(int samples = 10001) const;

private:
    std::vector<PolyPiece> pieces_;
    bool lipschitz_ = true;
};

/// Intersection of two unions of disjoint intervals.
std::vector<Interval> intersect_intervals(const std::vector<Interval>& a,
                                          const std::vector<Interval>& b);

enum class DampingModel {
    KelvinVoigt,  // damping acts on strain rates, inside the divergence terms
    Viscous       // damping acts directly on velocities
};

/// Three coefficient profiles plus the damping mechanism they drive.
struct DampingSpec {
    DampingProfile d1;
    DampingProfile d2;
    DampingProfile d3;
    DampingModel model = DampingModel::KelvinVoigt;

    const DampingProfile& profile(int i) const;
};

std::string to_string(DampingModel model);

}  // namespace bresse
