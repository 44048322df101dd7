#pragma once

#include <string>
#include <vector>

#include "blowup/scenarios.hpp"
#include "blowup/solver.hpp"

namespace blowup {

// Least-squares slope of log(error) against log(scale). Both vectors must hold
// positive entries and at least two points.
double fit_order(const std::vector<double>& scales, const std::vector<double>& errors);

struct QuadratureStudyRow {
    std::string functional;
    std::vector<double> values;      // discrete value per level
    std::vector<double> box_errors;  // |discrete - box reference| per level
    double box_value = 0.0;
    double closed_form = 0.0;        // whole-space value (box value for u_L6)
    double finest_rel_error = 0.0;   // vs closed_form; absolute when it is 0
    double order = 0.0;              // free single-slope fit; 0 when at_floor
    // The midpoint rule's error expands in even powers of h. When the free
    // fit lands below the gate because the h^4 term is still visible in the
    // level window, a two-term fit C2 h^2 + C4 h^4 that reproduces every
    // level to 2% with the h^4 share below one half at the finest level
    // certifies the leading exponent instead.
    double leading_order = 0.0;       // 2 when the expansion fit certifies, else 0
    double expansion_residual = 0.0;  // worst relative misfit of the two-term model
    bool at_floor = false;            // every error below the roundoff floor
    bool monotone = true;             // errors strictly non-increasing
    bool pass = false;
};

struct QuadratureStudy {
    std::vector<int> levels;
    std::vector<double> spacings;
    std::vector<QuadratureStudyRow> rows;
    bool pass = false;
};

// Samples the scenario at each grid level and measures every recorded
// functional against the box reference (convergence order) and the
// whole-space closed form (value match). Scenario must be on the closed-form
// path (constant velocity, zero H, zero background); needs >= 3 levels.
QuadratureStudy quadrature_convergence_study(const GaussianScenario& base,
                                             const std::vector<int>& levels,
                                             StencilOrder order = StencilOrder::fourth,
                                             double min_order = 1.9,
                                             double value_tol = 1e-6);

std::string study_row_line(const QuadratureStudyRow& row);

// Worst-sample identity residuals measured by centered differences.
double dissipation_identity_residual(const std::vector<EnergyBreakdown>& samples,
                                     const Params& params, int n_dim);
double inertia_identity_residual(const std::vector<EnergyBreakdown>& samples,
                                 const Params& params, int n_dim);
double radial_identity_residual(const std::vector<EnergyBreakdown>& samples,
                                const Params& params, int n_dim);

using TrajectoryResidual = double (*)(const std::vector<EnergyBreakdown>&, const Params&,
                                      int);

struct ResidualStudy {
    std::vector<double> dts;
    std::vector<double> residuals;
    double order = 0.0;
};

// Reruns the initial state at each dt with the sampling cadence held fixed in
// steps (so the sampling interval scales with dt) and fits the residual decay
// order. Every run must reach t_end; anything else throws std::runtime_error.
ResidualStudy dt_refinement_study(const State& initial, SolverConfig cfg,
                                  const std::vector<double>& dts,
                                  TrajectoryResidual residual);

}  // namespace blowup
