#include "blowup/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blowup {

Grid make_grid(int n_dim, double half_extent, int points_per_axis) {
    if (n_dim < 2 || n_dim > 4) {
        throw std::invalid_argument("make_grid: n_dim must be in [2, 4], got " + std::to_string(n_dim));
    }
    if (!(half_extent > 0.0) || !std::isfinite(half_extent)) {
        throw std::invalid_argument("make_grid: half_extent must be positive and finite");
    }
    if (points_per_axis < 8 || points_per_axis % 2 != 0) {
        throw std::invalid_argument("make_grid: points_per_axis must be even and >= 8, got " +
                                    std::to_string(points_per_axis));
    }

    Grid g;
    g.n_dim = n_dim;
    g.half_extent = half_extent;
    g.points_per_axis = points_per_axis;
    g.spacing = 2.0 * half_extent / points_per_axis;
    g.coordinates.resize(points_per_axis);
    for (int i = 0; i < points_per_axis / 2; ++i) {
        const double x = -half_extent + (i + 0.5) * g.spacing;
        g.coordinates[i] = x;
        g.coordinates[points_per_axis - 1 - i] = -x;
    }
    g.quadrature_weight = std::pow(g.spacing, n_dim);
    g.node_count = 1;
    for (int d = 0; d < n_dim; ++d) g.node_count *= static_cast<std::size_t>(points_per_axis);
    g.strides.assign(n_dim, 1);
    for (int d = n_dim - 2; d >= 0; --d) {
        g.strides[d] = g.strides[d + 1] * static_cast<std::size_t>(points_per_axis);
    }
    return g;
}

double total_weight(const Grid& grid) {
    return grid.quadrature_weight * static_cast<double>(grid.node_count);
}

}  // namespace blowup
