#include "bresse/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bresse {

Mesh Mesh::uniform(int n_elements, double length) {
    if (n_elements < 1 || !(length > 0.0))
        throw std::invalid_argument("mesh: need n_elements >= 1 and positive length");
    Mesh mesh;
    mesh.nodes.resize(n_elements + 1);
    for (int i = 0; i <= n_elements; ++i) mesh.nodes[i] = length * i / n_elements;
    mesh.nodes.back() = length;
    mesh.base_spacing = length / n_elements;
    return mesh;
}

Mesh Mesh::refined(int n_elements, double length, const std::vector<double>& breakpoints) {
    Mesh mesh = uniform(n_elements, length);
    const double snap = 1e-9 * length;
    for (double bp : breakpoints) {
        if (!(bp > 0.0) || !(bp < length)) continue;
        auto it = std::lower_bound(mesh.nodes.begin(), mesh.nodes.end(), bp);
        const double right = (it == mesh.nodes.end()) ? length : *it;
        const double left = (it == mesh.nodes.begin()) ? 0.0 : *(it - 1);
        if (std::abs(right - bp) <= snap || std::abs(bp - left) <= snap) continue;
        mesh.nodes.insert(it, bp);
    }
    return mesh;
}

}  // namespace bresse
