#include "blowup/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "blowup/ops.hpp"

namespace blowup {

namespace {

bool has_bulk_velocity(const GaussianScenario& sc) {
    for (double c : sc.U) {
        if (c != 0.0) return true;
    }
    return false;
}

double norm_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

}  // namespace

Grid scenario_grid(const GaussianScenario& sc) {
    return make_grid(sc.n_dim, sc.half_extent, sc.points_per_axis);
}

State build_state(const GaussianScenario& sc, StencilOrder order) {
    Grid grid = scenario_grid(sc);
    sc.params.validate(grid.n_dim);
    if (sc.rho_bar < 0.0 || sc.rho_background < 0.0)
        throw std::invalid_argument("scenario: densities must be nonnegative");
    if (sc.rho_bar == 0.0 && sc.rho_background == 0.0)
        throw std::invalid_argument("scenario: density is identically zero");
    if (sc.rho_bar > 0.0) {
        if (sc.s <= 0.0) throw std::invalid_argument("scenario: blob width must be positive");
        if (sc.s > sc.half_extent / 5.0)
            throw std::invalid_argument("scenario: blob width exceeds half_extent/5");
    }
    if (!sc.U.empty() && static_cast<int>(sc.U.size()) != grid.n_dim)
        throw std::invalid_argument("scenario: velocity dimension mismatch");
    if (sc.u_envelope_width < 0.0)
        throw std::invalid_argument("scenario: negative velocity envelope width");

    State st = make_state(grid, sc.params);
    const ScalarField r2 = radius_squared(grid);

    const double inv2s2 = sc.rho_bar > 0.0 ? 1.0 / (2.0 * sc.s * sc.s) : 0.0;
    for (std::size_t i = 0; i < grid.node_count; ++i)
        st.rho[i] = sc.rho_background + sc.rho_bar * std::exp(-r2[i] * inv2s2);

    if (has_bulk_velocity(sc)) {
        if (sc.u_envelope_width > 0.0) {
            const double inv2w2 = 1.0 / (2.0 * sc.u_envelope_width * sc.u_envelope_width);
            for (int d = 0; d < grid.n_dim; ++d)
                for (std::size_t i = 0; i < grid.node_count; ++i)
                    st.u[d][i] = sc.U[d] * std::exp(-r2[i] * inv2w2);
        } else {
            for (int d = 0; d < grid.n_dim; ++d)
                for (std::size_t i = 0; i < grid.node_count; ++i) st.u[d][i] = sc.U[d];
        }
    }

    if (sc.h_spec.kind == HSpecKind::loop && sc.h_spec.amplitude != 0.0) {
        if (grid.n_dim != 3)
            throw std::invalid_argument("scenario: loop field requires three dimensions");
        if (sc.h_spec.width <= 0.0)
            throw std::invalid_argument("scenario: loop width must be positive");
        VectorField pot = zeros_vector(grid);
        const double inv2w2 = 1.0 / (2.0 * sc.h_spec.width * sc.h_spec.width);
        for (std::size_t i = 0; i < grid.node_count; ++i)
            pot[2][i] = sc.h_spec.amplitude * std::exp(-r2[i] * inv2w2);
        st.H = curl(pot, grid, order);
    }

    st.time = 0.0;
    return st;
}

EnergyBreakdown gaussian_reference(const GaussianScenario& sc) {
    if (sc.u_envelope_width != 0.0)
        throw std::invalid_argument("gaussian_reference: requires constant bulk velocity");
    if (sc.h_spec.kind != HSpecKind::zero && sc.h_spec.amplitude != 0.0)
        throw std::invalid_argument("gaussian_reference: requires zero magnetic field");
    if (sc.rho_background != 0.0)
        throw std::invalid_argument("gaussian_reference: requires zero background density");
    if (sc.rho_bar <= 0.0 || sc.s <= 0.0)
        throw std::invalid_argument("gaussian_reference: requires a Gaussian blob");
    sc.params.validate(sc.n_dim);

    const int n = sc.n_dim;
    const double g = sc.params.gamma;
    const double two_pi_s2 = 2.0 * M_PI * sc.s * sc.s;
    const double m = sc.rho_bar * std::pow(two_pi_s2, 0.5 * n);

    EnergyBreakdown e;
    e.t = 0.0;
    e.m = m;
    e.P.assign(static_cast<std::size_t>(n), 0.0);
    for (int d = 0; d < n && d < static_cast<int>(sc.U.size()); ++d) e.P[d] = m * sc.U[d];
    e.E_k = 0.5 * m * norm_sq(sc.U);
    e.E_m = 0.0;
    e.rho_Lgamma = std::pow(sc.rho_bar, g) * std::pow(two_pi_s2 / g, 0.5 * n);
    e.E_i = sc.params.A / (g - 1.0) * e.rho_Lgamma;
    e.E_total = e.E_k + e.E_i;
    e.G = 0.5 * n * m * sc.s * sc.s;
    e.F = 0.0;
    e.Q = 4.0 * e.G * e.E_total - e.F * e.F;
    e.rho_L65 = std::pow(sc.rho_bar, 1.2) * std::pow(two_pi_s2 / 1.2, 0.5 * n);
    e.u_L6 = std::pow(norm_sq(sc.U), 3) * std::pow(2.0 * sc.half_extent, n);
    e.grad_u_sq = 0.0;
    e.curl_H_sq = 0.0;
    e.div_H_sq = 0.0;
    e.dissipation = 0.0;
    e.boundary_mass = 0.0;
    return e;
}

namespace {

// int_{-L}^{L} exp(-x^2 / (2 c^2)) dx
double gauss_box(double c, double half_extent) {
    return c * std::sqrt(2.0 * M_PI) * std::erf(half_extent / (c * std::sqrt(2.0)));
}

// int_{-L}^{L} x^2 exp(-x^2 / (2 c^2)) dx
double gauss_x2_box(double c, double half_extent) {
    return c * c *
           (gauss_box(c, half_extent) -
            2.0 * half_extent * std::exp(-half_extent * half_extent / (2.0 * c * c)));
}

}  // namespace

EnergyBreakdown gaussian_box_reference(const GaussianScenario& sc) {
    EnergyBreakdown e = gaussian_reference(sc);  // validates the scenario shape

    const int n = sc.n_dim;
    const double g = sc.params.gamma;
    const double ell = sc.half_extent;
    const double i1 = gauss_box(sc.s, ell);
    const double i2 = gauss_x2_box(sc.s, ell);

    e.m = sc.rho_bar * std::pow(i1, n);
    for (int d = 0; d < n && d < static_cast<int>(sc.U.size()); ++d) e.P[d] = e.m * sc.U[d];
    e.E_k = 0.5 * e.m * norm_sq(sc.U);
    e.rho_Lgamma = std::pow(sc.rho_bar, g) * std::pow(gauss_box(sc.s / std::sqrt(g), ell), n);
    e.E_i = sc.params.A / (g - 1.0) * e.rho_Lgamma;
    e.E_total = e.E_k + e.E_i;
    e.G = 0.5 * sc.rho_bar * n * i2 * std::pow(i1, n - 1);
    e.Q = 4.0 * e.G * e.E_total;
    e.rho_L65 = std::pow(sc.rho_bar, 1.2) * std::pow(gauss_box(sc.s * std::sqrt(5.0 / 6.0), ell), n);
    return e;
}

std::vector<GaussianScenario> scenario_library() {
    std::vector<GaussianScenario> lib;

    {
        GaussianScenario sc;
        sc.name = "gaussian-mhd";
        sc.n_dim = 3;
        sc.half_extent = 8.4;
        sc.points_per_axis = 48;
        sc.params = Params{1.0, 2.0, 2e-7, -1e-7, 0.05};
        sc.rho_bar = 1.0;
        sc.s = 1.2;
        sc.U = {0.5, 0.0, 0.0};
        sc.u_envelope_width = sc.s / std::sqrt(2.0);
        sc.h_spec = HSpec{HSpecKind::loop, 0.2, 1.0};
        lib.push_back(sc);
    }
    {
        GaussianScenario sc = lib.back();
        sc.name = "gaussian-soft";
        sc.params.gamma = 1.3;
        lib.push_back(sc);
    }
    {
        GaussianScenario sc;
        sc.name = "gaussian-ns";
        sc.n_dim = 3;
        sc.half_extent = 6.0;
        sc.points_per_axis = 32;
        sc.params = Params{1.0, 1.5, 0.3, -0.05, 0.0};
        sc.rho_bar = 0.08;
        sc.s = 1.0;
        sc.U = {0.06, 0.0, 0.0};
        sc.u_envelope_width = sc.s / std::sqrt(2.0);
        sc.rho_background = 1.0;
        sc.h_spec = HSpec{};
        lib.push_back(sc);
    }
    {
        GaussianScenario sc;
        sc.name = "gaussian-pedestal";
        sc.n_dim = 3;
        sc.half_extent = 6.0;
        sc.points_per_axis = 32;
        sc.params = Params{1.0, 1.4, 0.3, -0.05, 0.15};
        sc.rho_bar = 0.08;
        sc.s = 1.0;
        sc.U = {0.06, 0.0, 0.0};
        sc.u_envelope_width = sc.s / std::sqrt(2.0);
        sc.rho_background = 1.0;
        sc.h_spec = HSpec{HSpecKind::loop, 0.1, 1.0};
        lib.push_back(sc);
    }
    {
        GaussianScenario sc = lib.front();
        sc.name = "gaussian-control";
        sc.U.clear();
        sc.u_envelope_width = 0.0;
        lib.push_back(sc);
    }
    {
        GaussianScenario sc;
        sc.name = "uniform-static";
        sc.n_dim = 3;
        sc.half_extent = 6.0;
        sc.points_per_axis = 32;
        sc.params = Params{1.0, 2.0, 0.1, 0.0, 0.1};
        sc.rho_bar = 0.0;
        sc.rho_background = 1.0;
        lib.push_back(sc);
    }
    return lib;
}

GaussianScenario find_scenario(const std::string& name) {
    for (auto& sc : scenario_library())
        if (sc.name == name) return sc;
    throw std::invalid_argument("unknown scenario: " + name);
}

GaussianScenario oracle_scenario(int n_dim, double gamma) {
    GaussianScenario sc;
    sc.name = "oracle-gaussian";
    sc.n_dim = n_dim;
    sc.half_extent = 6.0;
    sc.points_per_axis = 48;
    sc.params = Params{1.0, gamma, 1e-8, 0.0, 0.0};
    sc.rho_bar = 1.0;
    sc.s = 1.0;
    sc.U.assign(static_cast<std::size_t>(n_dim), 0.0);
    sc.U[0] = 1.0;
    return sc;
}

}  // namespace blowup
