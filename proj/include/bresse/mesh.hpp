#pragma once

#include <vector>

namespace bresse {

/// 1D mesh on [0, L]: uniform base grid plus inserted breakpoints, so that
/// damping-coefficient interfaces always sit on element boundaries.
struct Mesh {
    std::vector<double> nodes;  // strictly increasing, nodes.front()=0, nodes.back()=L
    double base_spacing = 0.0;  // L / n_base of the uniform grid

    int n_elements() const { return static_cast<int>(nodes.size()) - 1; }
    int n_nodes() const { return static_cast<int>(nodes.size()); }
    double length() const { return nodes.back(); }

    static Mesh uniform(int n_elements, double length);

    /// Uniform mesh with the given interior breakpoints inserted; points
    /// closer than 1e-9*L to an existing node are snapped, not duplicated.
    static Mesh refined(int n_elements, double length, const std::vector<double>& breakpoints);
};

}  // namespace bresse
