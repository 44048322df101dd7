#pragma once

#include <vector>

#include "blowup/grid.hpp"

namespace blowup {

using ScalarField = std::vector<double>;
using VectorField = std::vector<ScalarField>;  // one ScalarField per component

inline ScalarField zeros(const Grid& grid) { return ScalarField(grid.node_count, 0.0); }

inline VectorField zeros_vector(const Grid& grid, int components) {
    return VectorField(static_cast<std::size_t>(components), ScalarField(grid.node_count, 0.0));
}

inline VectorField zeros_vector(const Grid& grid) { return zeros_vector(grid, grid.n_dim); }

}  // namespace blowup
