#pragma once

#include <cstddef>
#include <vector>

namespace blowup {

// Uniform periodic box [-L, L]^n sampled at cell centers x_i = -L + (i+1/2)h,
// h = 2L/N. Centers are stored mirror-symmetric (coordinates[N-1-i] is exactly
// -coordinates[i]) so odd moments of symmetric fields cancel to roundoff.
// Row-major node order: axis 0 is the slowest index, axis n-1 the fastest.
struct Grid {
    int n_dim = 0;
    double half_extent = 0.0;
    int points_per_axis = 0;
    double spacing = 0.0;
    std::vector<double> coordinates;     // per-axis sample positions, size N
    double quadrature_weight = 0.0;      // h^n per node
    std::size_t node_count = 0;
    std::vector<std::size_t> strides;    // strides[d] = N^(n-1-d)

    // Decomposes a flat node index into per-axis indices.
    void unflatten(std::size_t idx, int* axis_index) const {
        for (int d = 0; d < n_dim; ++d) {
            axis_index[d] = static_cast<int>((idx / strides[d]) % static_cast<std::size_t>(points_per_axis));
        }
    }
};

// Builds a grid; throws std::invalid_argument on odd or tiny N, non-positive L,
// or an unsupported dimension (supported: 2 <= n_dim <= 4).
Grid make_grid(int n_dim, double half_extent, int points_per_axis);

// Sum of all quadrature weights, (2L)^n.
double total_weight(const Grid& grid);

}  // namespace blowup
