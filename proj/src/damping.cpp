#include "bresse/damping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bresse {

namespace {

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> poly_axpy(double alpha, const std::vector<double>& a, double beta,
                              const std::vector<double>& b) {
    std::vector<double> out(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) out[i] += alpha * a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += beta * b[i];
    return out;
}

// d0 * (3 s^2 - 2 s^3) expanded in x, where s is the affine map `lin`.
std::vector<double> smoothstep_coeffs(double d0, const std::vector<double>& lin) {
    const auto s2 = poly_mul(lin, lin);
    const auto s3 = poly_mul(s2, lin);
    return poly_axpy(3.0 * d0, s2, -2.0 * d0, s3);
}

}  // namespace

double PolyPiece::eval(double x) const {
    const double t = x - x0;
    double v = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) v = v * t + coeffs[k];
    return v;
}

DampingProfile DampingProfile::zero(double length) {
    return from_pieces({{0.0, length, {0.0}}}, true);
}

DampingProfile DampingProfile::global(double d0, double length) {
    return from_pieces({{0.0, length, {d0}}}, true);
}

DampingProfile DampingProfile::indicator(double d0, double alpha, double beta, double length) {
    if (!(0.0 <= alpha && alpha < beta && beta <= length))
        throw std::invalid_argument("indicator profile: need 0 <= alpha < beta <= L");
    std::vector<PolyPiece> pieces;
    if (alpha > 0.0) pieces.push_back({0.0, alpha, {0.0}});
    pieces.push_back({alpha, beta, {d0}});
    if (beta < length) pieces.push_back({beta, length, {0.0}});
    return from_pieces(std::move(pieces), false);
}

DampingProfile DampingProfile::smoothstep(double d0, double alpha, double beta, double ramp,
                                          double length) {
    if (!(0.0 <= alpha && alpha < beta && beta <= length))
        throw std::invalid_argument("smoothstep profile: need 0 <= alpha < beta <= L");
    if (!(ramp > 0.0) || 2.0 * ramp > beta - alpha)
        throw std::invalid_argument("smoothstep profile: need 0 < 2*ramp <= beta - alpha");
    std::vector<PolyPiece> pieces;
    if (alpha > 0.0) pieces.push_back({0.0, alpha, {0.0}});
    // rising ramp: s = t / ramp in the local coordinate t = x - alpha
    pieces.push_back({alpha, alpha + ramp, smoothstep_coeffs(d0, {0.0, 1.0 / ramp})});
    if (beta - ramp > alpha + ramp)
        pieces.push_back({alpha + ramp, beta - ramp, {d0}});
    // falling ramp: s = 1 - t / ramp with t = x - (beta - ramp)
    pieces.push_back({beta - ramp, beta, smoothstep_coeffs(d0, {1.0, -1.0 / ramp})});
    if (beta < length) pieces.push_back({beta, length, {0.0}});
    return from_pieces(std::move(pieces), true);
}

DampingProfile DampingProfile::from_pieces(std::vector<PolyPiece> pieces, bool lipschitz) {
    DampingProfile p;
    p.pieces_ = std::move(pieces);
    p.lipschitz_ = lipschitz;
    return p;
}

double DampingProfile::eval(double x) const {
    if (pieces_.empty()) throw std::domain_error("eval on empty damping profile");
    if (x < pieces_.front().x0 || x > pieces_.back().x1)
        throw std::domain_error("damping profile evaluated outside [0, L]");
    for (const auto& piece : pieces_) {
        if (x >= piece.x0 && x <= piece.x1) return piece.eval(x);
    }
    return pieces_.back().eval(x);  // x == L with trailing rounding
}

int DampingProfile::max_degree() const {
    int deg = 0;
    for (const auto& piece : pieces_) deg = std::max(deg, piece.degree());
    return deg;
}

bool DampingProfile::identically_zero() const {
    for (const auto& piece : pieces_)
        for (double c : piece.coeffs)
            if (c != 0.0) return false;
    return true;
}

std::vector<double> DampingProfile::breakpoints() const {
    std::vector<double> bps;
    for (size_t i = 0; i + 1 < pieces_.size(); ++i) bps.push_back(pieces_[i].x1);
    return bps;
}

std::vector<Interval> DampingProfile::positive_support() const {
    constexpr int kSamplesPerPiece = 256;
    std::vector<Interval> out;
    auto push = [&out](double lo, double hi) {
        if (hi <= lo) return;
        if (!out.empty() && lo <= out.back().hi + 1e-14) {
            out.back().hi = std::max(out.back().hi, hi);
        } else {
            out.push_back({lo, hi});
        }
    };

    for (const auto& piece : pieces_) {
        const double h = (piece.x1 - piece.x0) / kSamplesPerPiece;
        if (h <= 0.0) continue;
        double run_start = -1.0;
        double prev_x = piece.x0;
        bool prev_pos = piece.eval(piece.x0) > 0.0;
        if (prev_pos) run_start = piece.x0;
        for (int i = 1; i <= kSamplesPerPiece; ++i) {
            const double x = (i == kSamplesPerPiece) ? piece.x1 : piece.x0 + i * h;
            const bool pos = piece.eval(x) > 0.0;
            if (pos != prev_pos) {
                // bisect the sign edge
                double a = prev_x, b = x;
                for (int k = 0; k < 60; ++k) {
                    const double m = 0.5 * (a + b);
                    if ((piece.eval(m) > 0.0) == prev_pos)
                        a = m;
                    else
                        b = m;
                }
                const double edge = 0.5 * (a + b);
                if (prev_pos)
                    push(run_start, edge);
                else
                    run_start = edge;
                prev_pos = pos;
            }
            prev_x = x;
        }
        if (prev_pos) push(run_start, piece.x1);
    }
    return out;
}

double DampingProfile::min_value(int samples) const {
    if (pieces_.empty()) return 0.0;
    const double L = length();
    double m = eval(0.0);
    for (int i = 1; i <= samples; ++i) m = std::min(m, eval(L * i / samples));
    for (const auto& piece : pieces_) {
        m = std::min(m, piece.eval(piece.x0));
        m = std::min(m, piece.eval(piece.x1));
    }
    return m;
}

std::vector<Interval> intersect_intervals(const std::vector<Interval>& a,
                                          const std::vector<Interval>& b) {
    std::vector<Interval> out;
    for (const auto& ia : a) {
        for (const auto& ib : b) {
            const double lo = std::max(ia.lo, ib.lo);
            const double hi = std::min(ia.hi, ib.hi);
            if (hi > lo) out.push_back({lo, hi});
        }
    }
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) {
        return x.lo < y.lo;
    });
    return out;
}

const DampingProfile& DampingSpec::profile(int i) const {
    switch (i) {
        case 1: return d1;
        case 2: return d2;
        case 3: return d3;
        default: throw std::out_of_range("DampingSpec::profile index must be 1, 2 or 3");
    }
}

std::string to_string(DampingModel model) {
    return model == DampingModel::KelvinVoigt ? "kelvin_voigt" : "viscous";
}

}  // namespace bresse
