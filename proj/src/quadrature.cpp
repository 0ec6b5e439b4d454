#include "bresse/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace bresse {

// Nodes are the roots of the Legendre polynomial P_n, found by Newton
// iteration from the Chebyshev-like initial guess; weights follow from
// the derivative. Standard construction, converges in a handful of steps.
GaussRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
    GaussRule rule;
    rule.points.resize(n);
    rule.weights.resize(n);

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;

    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n and P_n' by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.points[i] = mid - half * x;
        rule.points[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

int gauss_points_for_degree(int degree) {
    if (degree < 0) degree = 0;
    return degree / 2 + 1;
}

}  // namespace bresse
