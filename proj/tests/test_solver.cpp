#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blowup/functionals.hpp"
#include "blowup/random_fields.hpp"
#include "blowup/solver.hpp"
#include "blowup/state.hpp"
#include "testutil.hpp"

using namespace blowup;
using testutil::max_abs;
using testutil::max_abs_diff;

namespace {

Params lab_params() { return Params{1.0, 2.0, 0.05, -0.02, 0.04}; }

// Centered bump over a quiescent background, velocity and field at rest.
State bump_state(int points, double half_length, double s) {
    Grid grid = make_grid(3, half_length, points);
    State st = make_state(grid, lab_params());
    const ScalarField r2 = radius_squared(grid);
    for (std::size_t i = 0; i < grid.node_count; ++i)
        st.rho[i] = 0.4 + std::exp(-r2[i] / (s * s));
    return st;
}

double field_gap(const VectorField& a, const VectorField& b) {
    double worst = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d)
        worst = std::max(worst, max_abs_diff(a[d], b[d]));
    return worst;
}

}  // namespace

TEST_CASE("termination reason names round-trip") {
    CHECK(std::string(termination_name(TerminationReason::reached_t_end)) == "reached-t_end");
    CHECK(std::string(termination_name(TerminationReason::nan_detected)) == "nan-detected");
    CHECK(std::string(termination_name(TerminationReason::vacuum_detected)) ==
          "vacuum-detected");
    CHECK(std::string(termination_name(TerminationReason::cfl_collapse)) == "cfl-collapse");
    for (TerminationReason r :
         {TerminationReason::reached_t_end, TerminationReason::nan_detected,
          TerminationReason::vacuum_detected, TerminationReason::cfl_collapse})
        CHECK(termination_from_name(termination_name(r)) == r);
    CHECK_THROWS_AS(termination_from_name("diverged"), std::invalid_argument);
}

TEST_CASE("uniform state is a discrete equilibrium") {
    Grid grid = make_grid(3, 3.0, 12);
    State st = make_state(grid, lab_params());
    for (std::size_t i = 0; i < grid.node_count; ++i) {
        st.rho[i] = 1.0;
        st.H[0][i] = 0.3;
        st.H[1][i] = -0.2;
        st.H[2][i] = 0.1;
    }

    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.02;
    cfg.sample_every = 5;

    Conserved y = to_conserved(st);
    Stepper stepper(grid, st.params, cfg);
    Conserved dydt = y;
    stepper.rhs(y, dydt);
    CHECK(max_abs(dydt.rho) <= 1e-13);
    for (int d = 0; d < 3; ++d) {
        CHECK(max_abs(dydt.mom[d]) <= 1e-13);
        CHECK(max_abs(dydt.H[d]) <= 1e-13);
    }

    Trajectory traj = run_simulation(st, cfg);
    CHECK(traj.reason == TerminationReason::reached_t_end);
    CHECK(traj.stats.steps_completed == 20);
    CHECK(max_abs_diff(traj.final_state.rho, st.rho) <= 1e-12);
    CHECK(field_gap(traj.final_state.u, st.u) <= 1e-12);
    CHECK(field_gap(traj.final_state.H, st.H) <= 1e-12);
}

TEST_CASE("step rejects nonpositive and unstable dt") {
    State st = bump_state(12, 3.0, 0.8);
    SolverConfig cfg;
    Stepper stepper(st.grid, st.params, cfg);
    Conserved y = to_conserved(st);
    const double limit = stepper.stable_dt_limit(y);
    REQUIRE(limit > 0.0);

    Conserved work = y;
    CHECK_THROWS_AS(stepper.step(work, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(stepper.step(work, 0.0, -1e-3), std::invalid_argument);
    CHECK_THROWS_AS(stepper.step(work, 0.0, 1.01 * limit), std::invalid_argument);
    work = y;
    CHECK_NOTHROW(stepper.step(work, 0.0, 0.5 * limit));
}

TEST_CASE("forcing hook integrates polynomial sources exactly") {
    Grid grid = make_grid(3, 2.0, 8);
    State st = make_state(grid, lab_params());
    for (std::size_t i = 0; i < grid.node_count; ++i) st.rho[i] = 1.0;
    SolverConfig cfg;
    Stepper stepper(grid, st.params, cfg);

    const double dt = 0.1;
    ForcingFn cubic = [](double t, Conserved& dydt) {
        for (double& v : dydt.rho) v += 3.0 * t * t;
    };
    ForcingFn linear = [](double t, Conserved& dydt) {
        for (double& v : dydt.rho) v += 2.0 * t;
    };

    Conserved y = to_conserved(st);
    stepper.step(y, 0.0, dt, &cubic);
    CHECK(max_abs_diff(y.rho, std::vector<double>(grid.node_count, 1.0 + dt * dt * dt)) <=
          1e-14);

    y = to_conserved(st);
    stepper.step(y, 0.0, dt, &linear);
    CHECK(max_abs_diff(y.rho, std::vector<double>(grid.node_count, 1.0 + dt * dt)) <= 1e-14);

    const double t0 = 0.4;
    y = to_conserved(st);
    stepper.step(y, t0, dt, &cubic);
    const double t1 = t0 + dt;
    CHECK(max_abs_diff(y.rho,
                       std::vector<double>(grid.node_count, 1.0 + t1 * t1 * t1 - t0 * t0 * t0)) <=
          1e-13);
}

TEST_CASE("admissible step guards and scaling") {
    State st = bump_state(12, 3.0, 0.8);
    for (std::size_t i = 0; i < st.grid.node_count; ++i) st.H[0][i] = 2.0;

    const double base = cfl_dt(st, 1e-8, 0.4);
    REQUIRE(base > 0.0);
    CHECK(cfl_dt(st, 1e-8, 0.2) == doctest::Approx(0.5 * base).epsilon(1e-14));
    CHECK(cfl_dt(st, 1e-8, 0.4, false) > base);

    State flat = make_state(st.grid, st.params);
    for (std::size_t i = 0; i < flat.grid.node_count; ++i) flat.rho[i] = 1e-9;
    CHECK_THROWS_AS(cfl_dt(flat, 1e-8, 0.4), std::invalid_argument);
}

TEST_CASE("masked velocity zeroes subfloor cells") {
    ScalarField rho = {2.0, 0.5, 1e-9, 0.0, -0.1, 4.0};
    VectorField mom = {{1.0, 1.0, 1.0, 1.0, 1.0, 2.0}, {0.5, -0.5, 3.0, 3.0, 3.0, -8.0}};
    VectorField u(2, ScalarField(rho.size(), 7.0));
    masked_velocity(rho, mom, 1e-8, u);
    CHECK(u[0][0] == 0.5);
    CHECK(u[1][0] == 0.25);
    CHECK(u[0][1] == 2.0);
    CHECK(u[1][1] == -1.0);
    for (std::size_t i = 2; i < 5; ++i) {
        CHECK(u[0][i] == 0.0);
        CHECK(u[1][i] == 0.0);
    }
    CHECK(u[0][5] == 0.5);
    CHECK(u[1][5] == -2.0);
}

TEST_CASE("fixed policy collapses when the admissible step is exceeded") {
    State st = bump_state(12, 3.0, 0.8);
    const double limit = cfl_dt(st, 1e-8, 0.4);

    SolverConfig cfg;
    cfg.dt = 2.0 * limit;
    cfg.t_end = 20.0 * limit;
    Trajectory traj = run_simulation(st, cfg);
    CHECK(traj.reason == TerminationReason::cfl_collapse);
    CHECK(traj.stats.steps_completed == 0);
    CHECK(traj.samples.size() == 1);
    CHECK(traj.stats.mass_drift_rel == 0.0);
}

TEST_CASE("driver validates initial data") {
    State st = bump_state(12, 3.0, 0.8);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.01;

    State bad = st;
    bad.rho[5] = std::nan("");
    CHECK_THROWS_AS(run_simulation(bad, cfg), std::invalid_argument);

    State charged = st;
    charged.H[1][3] = 0.7;
    SolverConfig ns = cfg;
    ns.mhd = false;
    CHECK_THROWS_AS(run_simulation(charged, ns), std::invalid_argument);
    CHECK_NOTHROW(run_simulation(charged, cfg));

    SolverConfig ragged = cfg;
    ragged.t_end = 0.0105;
    CHECK_THROWS_AS(run_simulation(st, ragged), std::invalid_argument);
}

TEST_CASE("vacuum termination before stepping") {
    State st = bump_state(16, 3.0, 0.4);
    for (std::size_t i = 0; i < st.grid.node_count; ++i) st.rho[i] -= 0.4;

    SolverConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 0.01;
    cfg.density_floor = 1e-3;
    cfg.vacuum_mass_tolerance = 1e-12;
    Trajectory traj = run_simulation(st, cfg);
    CHECK(traj.reason == TerminationReason::vacuum_detected);
    CHECK(traj.stats.steps_completed == 0);
    CHECK(traj.samples.size() == 1);
    CHECK(traj.stats.max_subfloor_mass_fraction > 1e-12);
}

TEST_CASE("conserved quantities hold on an mhd run") {
    Grid grid = make_grid(3, 3.0, 16);
    State st = random_state(grid, lab_params(), 11, StencilOrder::fourth, true, 0.5);

    SolverConfig cfg;
    const double limit = cfl_dt(st, cfg.density_floor, cfg.cfl_number);
    cfg.dt = 0.5 * limit;
    cfg.t_end = 40.0 * cfg.dt;
    cfg.sample_every = 8;
    Trajectory traj = run_simulation(st, cfg);

    CHECK(traj.reason == TerminationReason::reached_t_end);
    CHECK(traj.stats.steps_completed == 40);
    REQUIRE(traj.samples.size() == 6);
    for (std::size_t i = 0; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].t == static_cast<double>(8 * i) * cfg.dt);

    CHECK(traj.stats.mass_drift_rel <= 1e-13);
    CHECK(traj.stats.momentum_drift_abs <= 1e-12);
    CHECK(traj.stats.max_div_h_rel <= 1e-12);
    CHECK(traj.stats.min_density > 0.0);
    CHECK(traj.stats.max_subfloor_mass_fraction == 0.0);
    CHECK(traj.stats.resolution_fraction < 0.5);

    const double e0 = traj.samples.front().E_total;
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].E_total <= traj.samples[i - 1].E_total + 1e-10 * e0);
}

TEST_CASE("ns mode matches mhd with a zero magnetic field") {
    Grid grid = make_grid(3, 3.0, 16);
    State st = random_state(grid, lab_params(), 23, StencilOrder::fourth, false, 0.5);

    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.02;
    cfg.sample_every = 4;
    SolverConfig ns = cfg;
    ns.mhd = false;

    Trajectory with_field = run_simulation(st, cfg);
    Trajectory without = run_simulation(st, ns);
    REQUIRE(with_field.samples.size() == without.samples.size());
    CHECK(max_abs_diff(with_field.final_state.rho, without.final_state.rho) == 0.0);
    CHECK(field_gap(with_field.final_state.u, without.final_state.u) == 0.0);
    CHECK(field_gap(with_field.final_state.H, without.final_state.H) == 0.0);
    for (std::size_t i = 0; i < with_field.samples.size(); ++i) {
        CHECK(with_field.samples[i].E_total == without.samples[i].E_total);
        CHECK(with_field.samples[i].F == without.samples[i].F);
        CHECK(with_field.samples[i].E_m == 0.0);
    }
}

TEST_CASE("sampling cadence lands on the final step") {
    State st = bump_state(12, 3.0, 0.8);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.01;
    cfg.sample_every = 3;
    Trajectory traj = run_simulation(st, cfg);
    CHECK(traj.reason == TerminationReason::reached_t_end);
    CHECK(traj.stats.steps_completed == 10);
    REQUIRE(traj.samples.size() == 5);
    const double expected[] = {0.0, 3e-3, 6e-3, 9e-3, 10e-3};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(traj.samples[i].t == doctest::Approx(expected[i]).epsilon(1e-13));
    CHECK(traj.final_state.time == doctest::Approx(cfg.t_end).epsilon(1e-13));
}

TEST_CASE("temporal self-convergence is fourth order") {
    Grid grid = make_grid(3, 3.0, 12);
    State st = random_state(grid, lab_params(), 5, StencilOrder::fourth, true, 0.5);

    auto final_rho = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.032;
        cfg.sample_every = 1000;
        Trajectory traj = run_simulation(st, cfg);
        REQUIRE(traj.reason == TerminationReason::reached_t_end);
        return traj.final_state;
    };

    State ref = final_rho(2.5e-4);
    double err[3];
    const double dts[] = {4e-3, 2e-3, 1e-3};
    for (int i = 0; i < 3; ++i) {
        State coarse = final_rho(dts[i]);
        err[i] = max_abs_diff(coarse.rho, ref.rho);
        err[i] = std::max(err[i], field_gap(coarse.u, ref.u));
        err[i] = std::max(err[i], field_gap(coarse.H, ref.H));
    }
    REQUIRE(err[2] > 1e-15);
    const double order01 = std::log2(err[0] / err[1]);
    const double order12 = std::log2(err[1] / err[2]);
    CHECK(order01 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(order12 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("cfl scaled policy lands exactly on t_end") {
    State st = bump_state(12, 3.0, 0.8);
    SolverConfig cfg;
    cfg.dt_policy = DtPolicy::cfl_scaled;
    cfg.dt = 1e-2;
    cfg.t_end = 0.02;
    cfg.sample_every = 1;
    Trajectory traj = run_simulation(st, cfg);
    CHECK(traj.reason == TerminationReason::reached_t_end);
    CHECK(traj.stats.steps_completed >= 2);
    CHECK(traj.final_state.time == doctest::Approx(cfg.t_end).epsilon(1e-12));
    CHECK(traj.samples.back().t == doctest::Approx(cfg.t_end).epsilon(1e-12));
    CHECK(traj.stats.mass_drift_rel <= 1e-13);
}
