#include "bresse/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bresse {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    const double det = n * sxx - sx * sx;
    fit.slope = det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

}  // namespace

std::string DecayFit::describe() const {
    std::ostringstream oss;
    oss << "model=" << (model == Model::Exponential ? "exponential" : "polynomial")
        << ", rate=" << rate << ", window=[" << window_lo << "," << window_hi << "]"
        << ", residual=" << residual << ", competing_residual=" << competing_residual;
    if (degenerate) oss << ", degenerate=1";
    if (window_shrunk) oss << ", window_shrunk=1";
    if (std::isfinite(crossover_time)) oss << ", crossover_time=" << crossover_time;
    return oss.str();
}

DecayFit fit_decay(const EnergyTrace& trace, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw std::invalid_argument("fit window fraction must lie in (0, 1]");
    const auto& samples = trace.samples;
    const size_t total = samples.size();
    const size_t start = static_cast<size_t>(std::floor((1.0 - window_fraction) * total));

    constexpr double kUnderflow = 1e-30;
    DecayFit fit;
    std::vector<double> t, log_t, log_e;
    for (size_t i = start; i < total; ++i) {
        if (samples[i].energy <= kUnderflow) {
            fit.window_shrunk = true;
            continue;
        }
        if (samples[i].t <= 0.0) continue;  // log t undefined at the origin
        t.push_back(samples[i].t);
        log_t.push_back(std::log(samples[i].t));
        log_e.push_back(std::log(samples[i].energy));
    }
    if (t.size() < 50)
        throw ConfigError("decay fit needs at least 50 positive-energy samples in the window");

    const LineFit expo = least_squares(t, log_e);        // log E = a - delta t
    const LineFit poly = least_squares(log_t, log_e);    // log E = c - gamma log t

    fit.window_lo = t.front();
    fit.window_hi = t.back();

    const double total_drop = *std::max_element(log_e.begin(), log_e.end()) -
                              *std::min_element(log_e.begin(), log_e.end());
    fit.degenerate = total_drop < 1e-9;

    if (!fit.degenerate && expo.rms < poly.rms) {
        fit.model = DecayFit::Model::Exponential;
        fit.rate = -expo.slope;
        fit.amplitude = std::exp(expo.intercept);
        fit.residual = expo.rms;
        fit.competing_residual = poly.rms;
    } else {
        fit.model = DecayFit::Model::Polynomial;
        fit.rate = -poly.slope;
        fit.amplitude = std::exp(poly.intercept);
        fit.residual = poly.rms;
        fit.competing_residual = expo.rms;
    }

    // Crossover diagnostic: first window time after which the exponential
    // model is pointwise at least as good as the power law.
    fit.crossover_time = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < t.size(); ++i) {
        bool exp_wins_from_here = true;
        for (size_t j = i; j < t.size(); ++j) {
            const double re = std::abs(log_e[j] - expo.intercept - expo.slope * t[j]);
            const double rp = std::abs(log_e[j] - poly.intercept - poly.slope * log_t[j]);
            if (re > rp) {
                exp_wins_from_here = false;
                break;
            }
        }
        if (exp_wins_from_here) {
            fit.crossover_time = t[i];
            break;
        }
    }
    return fit;
}

}  // namespace bresse
