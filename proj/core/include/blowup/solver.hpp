#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blowup/functionals.hpp"
#include "blowup/state.hpp"

namespace blowup {

enum class DtPolicy { fixed, cfl_scaled };

struct SolverConfig {
    StencilOrder order = StencilOrder::fourth;
    DtPolicy dt_policy = DtPolicy::fixed;
    double dt = 1e-3;                     // step for fixed policy, ceiling for cfl_scaled
    double t_end = 1.0;
    double density_floor = 1e-8;          // validity monitor only, fields are never clamped
    double vacuum_mass_tolerance = 1e-6;  // subfloor mass fraction that ends the run
    int sample_every = 1;                 // sampling cadence in steps
    bool mhd = true;                      // false drops the induction/Lorentz terms
    double cfl_number = 0.4;              // in (0, 1)

    void validate(const Grid& grid) const;
};

enum class TerminationReason { reached_t_end, nan_detected, vacuum_detected, cfl_collapse };

// "reached-t_end", "nan-detected", "vacuum-detected", or "cfl-collapse".
const char* termination_name(TerminationReason reason);
TerminationReason termination_from_name(const std::string& name);

// Conservative fields advanced by the integrator.
struct Conserved {
    ScalarField rho;
    VectorField mom;
    VectorField H;
};

Conserved to_conserved(const State& st);

// u = mom / rho where rho > floor, zero elsewhere.
void masked_velocity(const ScalarField& rho, const VectorField& mom, double floor,
                     VectorField& u);

State to_state(const Conserved& y, const Grid& grid, const Params& params, double floor,
               double time);

// Additive source hook evaluated at each integrator stage time.
using ForcingFn = std::function<void(double t, Conserved& dydt)>;

// Evaluates the semi-discrete right-hand side and advances it with classic
// RK4. All fluxes are written in divergence form with the masked velocity, so
// grid sums of rho and mom are preserved to roundoff and the discrete
// divergence of H is invariant.
class Stepper {
  public:
    Stepper(const Grid& grid, const Params& params, const SolverConfig& cfg);

    void rhs(const Conserved& y, Conserved& dydt);

    // Advances y by one RK4 step. Rejects (std::invalid_argument) a dt that is
    // not positive or exceeds the unscaled stability limit of the current y.
    void step(Conserved& y, double t, double dt, const ForcingFn* forcing = nullptr);

    // Stability limit of the current state at cfl_number = 1.
    double stable_dt_limit(const Conserved& y) const;

    const Grid& grid() const { return grid_; }

  private:
    Grid grid_;
    Params params_;
    SolverConfig cfg_;
    VectorField u_;
    std::vector<ScalarField> jac_;
    ScalarField div_u_, pres_, hsq_, flux_, deriv_;
    VectorField curl_a_, curl_b_;
    Conserved k1_, k2_, k3_, k4_, ytmp_;
};

// Admissible step for the current state,
//   dt = cfl_number * min( h / (|u|_max + c_max + vA_max),
//                          h^2 / (2 n max(mu / rho_min_on_support, nu)) ),
// with sound speed c = sqrt(A gamma rho^{gamma-1}) and Alfven speed
// vA = |H| / sqrt(rho) evaluated where rho exceeds the floor. Throws
// std::invalid_argument when no cell sits above the floor.
double cfl_dt(const State& st, double density_floor, double cfl_number = 0.4,
              bool mhd = true);

struct RunStats {
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double mass_drift_rel = 0.0;
    std::vector<double> momentum_initial;  // grid sums of mom, not masked
    std::vector<double> momentum_final;
    double momentum_drift_abs = 0.0;
    double min_density = 0.0;
    double max_subfloor_mass_fraction = 0.0;
    double max_div_h_rel = 0.0;
    double max_lorentz_discrepancy = 0.0;
    double resolution_fraction = 0.0;
    long steps_completed = 0;
};

struct Trajectory {
    std::vector<EnergyBreakdown> samples;
    TerminationReason reason = TerminationReason::reached_t_end;
    RunStats stats;
    State final_state;
    SolverConfig config;  // echo of the configuration that produced the run
};

// Time-stepping driver: samples at step 0, every sample_every steps, and at
// the final step; monitors finiteness, subfloor mass, and the stability limit
// and stops early with the matching reason (never silently). Under the fixed
// policy the run ends with cfl-collapse as soon as the admissible step drops
// below dt; under cfl_scaled the step tracks the admissible limit (capped by
// dt) and collapse means the limit fell below 1e-9 * t_end.
Trajectory run_simulation(const State& initial, const SolverConfig& cfg);

}  // namespace blowup
