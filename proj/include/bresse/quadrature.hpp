#pragma once

#include <vector>

namespace bresse {

/// One-dimensional Gauss-Legendre rule on a caller-chosen interval.
struct GaussRule {
    std::vector<double> points;   // abscissae in [a, b]
    std::vector<double> weights;  // matching weights, sum = b - a
};

/// Rule with `n` points on [a, b]; exact for polynomials of degree <= 2n-1.
GaussRule gauss_legendre(int n, double a, double b);

/// Smallest point count whose rule integrates the given degree exactly.
int gauss_points_for_degree(int degree);

}  // namespace bresse
