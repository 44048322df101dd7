#pragma once

#include <cstddef>

#include "blowup/field.hpp"
#include "blowup/grid.hpp"

namespace blowup {

enum class StencilOrder { second = 2, fourth = 4 };

inline int stencil_halfwidth(StencilOrder order) { return order == StencilOrder::second ? 1 : 2; }

// Fixed-order blocked pairwise sum; deterministic and accurate to O(log n) ulps.
double reduce_sum(const double* values, std::size_t count);
double reduce_sum(const ScalarField& values);

// Quadrature: weight * sum(field). Throws on size mismatch.
double integrate(const ScalarField& field, const Grid& grid);

// Central difference along one axis with periodic wrap, writing into out.
void axis_derivative(const ScalarField& field, ScalarField& out, const Grid& grid, int axis,
                     StencilOrder order);
ScalarField axis_derivative(const ScalarField& field, const Grid& grid, int axis, StencilOrder order);

VectorField gradient(const ScalarField& field, const Grid& grid, StencilOrder order);
ScalarField divergence(const VectorField& vfield, const Grid& grid, StencilOrder order);

// n = 3 only; throws std::invalid_argument otherwise. The out overload
// reuses the caller's buffers (resized if needed).
VectorField curl(const VectorField& vfield, const Grid& grid, StencilOrder order);
void curl(const VectorField& vfield, VectorField& out, const Grid& grid, StencilOrder order);

// Pointwise cross product of two 3-component fields.
VectorField cross(const VectorField& a, const VectorField& b, const Grid& grid);
void cross(const VectorField& a, const VectorField& b, VectorField& out);

// Periodic shift by whole steps along an axis (x -> x + steps*h reading).
ScalarField shift(const ScalarField& field, const Grid& grid, int axis, int steps);

// Spectral-tail proxy: ||sum_d (f(+d) - 2f + f(-d))||^2 / (16 n^2 ||f - mean||^2),
// equal to 1 for the all-axes Nyquist mode and ~(kh)^4 small for resolved fields.
// Returns 0 for (numerically) constant fields.
double second_difference_energy_fraction(const ScalarField& field, const Grid& grid);

// Axis index range test for the contamination band: true when any axis index
// lies within `band` cells of the box faces.
bool in_boundary_band(const Grid& grid, std::size_t node, int band);

}  // namespace blowup
