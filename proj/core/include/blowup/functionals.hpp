#pragma once

#include <vector>

#include "blowup/ops.hpp"
#include "blowup/state.hpp"

namespace blowup {

// Every scalar functional of a State at one instant. P has n_dim entries.
struct EnergyBreakdown {
    double t = 0.0;
    double m = 0.0;
    std::vector<double> P;
    double E_k = 0.0;
    double E_m = 0.0;
    double E_i = 0.0;
    double E_total = 0.0;
    double G = 0.0;
    double F = 0.0;
    double Q = 0.0;
    double grad_u_sq = 0.0;
    double curl_H_sq = 0.0;
    double u_L6 = 0.0;
    double rho_L65 = 0.0;
    double rho_Lgamma = 0.0;
    double div_H_sq = 0.0;
    double dissipation = 0.0;
    double boundary_mass = 0.0;

    double momentum_norm() const;
};

double mass(const State& state);
std::vector<double> momentum(const State& state);

// Fills every field; throws std::runtime_error if any value is non-finite.
// Density enters p-norm integrands as max(rho, 0); negative undershoots are
// monitored by the solver, never clamped in the evolved fields.
EnergyBreakdown energy_breakdown(const State& state, StencilOrder order);

// E = nu curl H - u x H; requires n_dim == 3.
VectorField electric_field(const State& state, StencilOrder order);

// Squared distance from the origin at each node.
ScalarField radius_squared(const Grid& grid);

}  // namespace blowup
