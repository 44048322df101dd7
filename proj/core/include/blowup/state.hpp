#pragma once

#include "blowup/field.hpp"
#include "blowup/grid.hpp"
#include "blowup/params.hpp"

namespace blowup {

// Primitive-variable snapshot of the system at one instant. H has n_dim
// components and is identically zero in Navier-Stokes mode.
struct State {
    Grid grid;
    Params params;
    double time = 0.0;
    ScalarField rho;
    VectorField u;
    VectorField H;
};

inline State make_state(const Grid& grid, const Params& params) {
    State s;
    s.grid = grid;
    s.params = params;
    s.rho = zeros(grid);
    s.u = zeros_vector(grid);
    s.H = zeros_vector(grid);
    return s;
}

}  // namespace blowup
