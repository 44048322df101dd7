#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blowup/convergence.hpp"
#include "blowup/scenarios.hpp"
#include "blowup/solver.hpp"
#include "testutil.hpp"

using namespace blowup;

namespace {

const QuadratureStudyRow& row_named(const QuadratureStudy& study, const std::string& name) {
    for (const auto& row : study.rows)
        if (row.functional == name) return row;
    FAIL("no row named " << name);
    return study.rows.front();
}

double sample_spacing_sq(const std::vector<EnergyBreakdown>& samples, const Params&, int) {
    return (samples[1].t - samples[0].t) * (samples[1].t - samples[0].t);
}

State pedestal_bump(int points) {
    Grid grid = make_grid(3, 3.0, points);
    Params params{1.0, 2.0, 0.05, -0.02, 0.04};
    State st = make_state(grid, params);
    const ScalarField r2 = radius_squared(grid);
    for (std::size_t i = 0; i < grid.node_count; ++i)
        st.rho[i] = 0.4 + std::exp(-r2[i] / 0.36);
    return st;
}

}  // namespace

TEST_CASE("log-log slope fit recovers synthetic orders") {
    const std::vector<double> h = {0.5, 0.25, 0.125, 0.0625};
    std::vector<double> e2, e4;
    for (double x : h) {
        e2.push_back(3.7 * std::pow(x, 2.31));
        e4.push_back(0.04 * std::pow(x, 4.0));
    }
    CHECK(fit_order(h, e2) == doctest::Approx(2.31).epsilon(1e-10));
    CHECK(fit_order(h, e4) == doctest::Approx(4.0).epsilon(1e-10));

    CHECK_THROWS_AS(fit_order({0.5}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_order({0.5, 0.25}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_order({0.5, 0.25}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_order({0.5, -0.25}, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("oracle quadrature ladder certifies every functional") {
    QuadratureStudy study = quadrature_convergence_study(oracle_scenario(), {24, 32, 48});
    CHECK(study.pass);
    REQUIRE(study.levels == std::vector<int>{24, 32, 48});
    REQUIRE(study.spacings.size() == 3);
    CHECK(study.spacings[0] == doctest::Approx(0.5));
    CHECK(study.spacings[2] == doctest::Approx(0.25));
    CHECK(study.rows.size() == 11);
    for (const auto& row : study.rows) CHECK(row.pass);

    const double whole_mass = std::pow(2.0 * M_PI, 1.5);
    const auto& m_row = row_named(study, "m");
    CHECK_FALSE(m_row.at_floor);
    CHECK(m_row.monotone);
    CHECK(m_row.leading_order == 2.0);
    CHECK(m_row.expansion_residual < 0.02);
    CHECK(m_row.closed_form == doctest::Approx(whole_mass).epsilon(1e-12));
    CHECK(m_row.finest_rel_error < 1e-6);

    CHECK(row_named(study, "G").closed_form == doctest::Approx(1.5 * whole_mass).epsilon(1e-12));
    CHECK(row_named(study, "E_k").closed_form ==
          doctest::Approx(0.5 * whole_mass).epsilon(1e-12));

    const auto& ei_row = row_named(study, "E_i");
    CHECK(ei_row.at_floor);
    CHECK(ei_row.finest_rel_error < 1e-12);

    CHECK(std::fabs(row_named(study, "F").values.back()) < 1e-10);
    const auto& u6_row = row_named(study, "u_L6");
    CHECK(u6_row.closed_form == doctest::Approx(1728.0).epsilon(1e-12));
    CHECK(u6_row.finest_rel_error == 0.0);

    for (const auto& row : study.rows) {
        const std::string line = study_row_line(row);
        CHECK(line.find(row.functional) != std::string::npos);
    }
}

TEST_CASE("coarse ladder is limited by the closed-form value gate") {
    QuadratureStudy tight = quadrature_convergence_study(oracle_scenario(), {8, 10, 12});
    CHECK_FALSE(tight.pass);
    const auto& ei_row = row_named(tight, "E_i");
    CHECK_FALSE(ei_row.pass);
    CHECK(ei_row.order > 2.0);
    CHECK(ei_row.monotone);
    CHECK(ei_row.finest_rel_error > 1e-6);
    const auto& m_row = row_named(tight, "m");
    CHECK(m_row.pass);
    CHECK(m_row.order > 2.0);

    QuadratureStudy loose = quadrature_convergence_study(oracle_scenario(), {8, 10, 12},
                                                         StencilOrder::fourth, 1.9, 5e-4);
    CHECK(loose.pass);
}

TEST_CASE("quadrature study rejects unusable inputs") {
    CHECK_THROWS_AS(quadrature_convergence_study(oracle_scenario(), {24, 32}),
                    std::invalid_argument);
    CHECK_THROWS_AS(quadrature_convergence_study(find_scenario("gaussian-pedestal"),
                                                 {16, 24, 32}),
                    std::invalid_argument);
}

TEST_CASE("dt refinement reruns with the cadence fixed in steps") {
    State st = pedestal_bump(12);
    SolverConfig cfg;
    cfg.t_end = 0.032;
    cfg.sample_every = 2;
    ResidualStudy study =
        dt_refinement_study(st, cfg, {4e-3, 2e-3, 1e-3}, &sample_spacing_sq);
    REQUIRE(study.dts == std::vector<double>{4e-3, 2e-3, 1e-3});
    REQUIRE(study.residuals.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(study.residuals[i] ==
              doctest::Approx(4.0 * study.dts[i] * study.dts[i]).epsilon(1e-12));
    CHECK(study.order == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("dt refinement refuses runs that end early") {
    State st = pedestal_bump(12);
    const double limit = cfl_dt(st, 1e-8, 0.4);
    SolverConfig cfg;
    cfg.t_end = 64.0 * limit;
    cfg.sample_every = 1;
    CHECK_THROWS_AS(
        dt_refinement_study(st, cfg, {2.0 * limit, limit}, &dissipation_identity_residual),
        std::runtime_error);
    CHECK_THROWS_AS(dt_refinement_study(st, cfg, {0.25 * limit}, &dissipation_identity_residual),
                    std::invalid_argument);
}

TEST_CASE("identity residuals shrink at second order on a resolved run") {
    State st = build_state(find_scenario("gaussian-pedestal"), StencilOrder::fourth);
    SolverConfig cfg;
    cfg.t_end = 0.08;
    cfg.sample_every = 5;
    ResidualStudy study = dt_refinement_study(st, cfg, {4e-3, 2e-3, 1e-3},
                                              &dissipation_identity_residual);
    CHECK(study.residuals[0] > study.residuals[1]);
    CHECK(study.residuals[1] > study.residuals[2]);
    CHECK(study.order == doctest::Approx(2.0).epsilon(0.11));
}
