#pragma once

#include <string>
#include <vector>

#include "blowup/functionals.hpp"
#include "blowup/state.hpp"

namespace blowup {

enum class HSpecKind { zero, loop };

// Solenoidal magnetic profile: the discrete curl of the vector potential
// (0, 0, amplitude * exp(-|x|^2 / (2 width^2))), so div H = 0 holds exactly
// for the solver's own stencil.
struct HSpec {
    HSpecKind kind = HSpecKind::zero;
    double amplitude = 0.0;
    double width = 1.0;
};

// Gaussian density blob over an optional uniform background, with constant or
// envelope-localized bulk velocity. Self-contained: carries box and params.
struct GaussianScenario {
    std::string name;
    int n_dim = 3;
    double half_extent = 6.0;
    int points_per_axis = 48;
    Params params;
    double rho_bar = 1.0;           // blob peak density
    double s = 1.0;                 // blob width
    std::vector<double> U;          // bulk velocity (empty or zeros -> at rest)
    double u_envelope_width = 0.0;  // 0 -> constant U; > 0 -> U * exp(-|x|^2/(2 w^2))
    double rho_background = 0.0;    // uniform pedestal added to the blob
    HSpec h_spec;
};

Grid scenario_grid(const GaussianScenario& sc);

// Samples the scenario onto its grid; enforces s <= half_extent/5 when the
// blob is present. H is built with the given stencil order.
State build_state(const GaussianScenario& sc, StencilOrder order);

// Closed-form functionals at t = 0. Requires constant-velocity path
// (u_envelope_width == 0), zero H and zero background; throws otherwise.
// Grid-independent entries: m, P, E_k, E_i, G, F (= 0), E_m (= 0), E_total, Q,
// rho_Lgamma, rho_L65; box-dependent closed forms: u_L6 = |U|^6 (2L)^n.
// Derivative-based entries are zero for this family (constant u, zero H).
EnergyBreakdown gaussian_reference(const GaussianScenario& sc);

// Same functionals integrated over the box [-L, L]^n instead of R^n, via erf
// closed forms, so midpoint-quadrature errors can be measured free of the
// domain-truncation offset. Same preconditions as gaussian_reference.
EnergyBreakdown gaussian_box_reference(const GaussianScenario& sc);

// Built-in presets; names: gaussian-mhd, gaussian-soft, gaussian-ns,
// gaussian-pedestal, gaussian-control, uniform-static.
std::vector<GaussianScenario> scenario_library();
GaussianScenario find_scenario(const std::string& name);

// Constant-velocity family on the closed-form path (rho_bar = 1, s = 1,
// L = 6, A = 1, U = e1, H = 0), used for quadrature convergence studies.
GaussianScenario oracle_scenario(int n_dim = 3, double gamma = 2.0);

}  // namespace blowup
