#include "blowup/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace blowup {

namespace {

double integrate_raw(const ScalarField& integrand, const Grid& grid) {
    return grid.quadrature_weight * reduce_sum(integrand);
}

}  // namespace

double EnergyBreakdown::momentum_norm() const {
    double s = 0.0;
    for (double p : P) s += p * p;
    return std::sqrt(s);
}

double mass(const State& state) { return integrate(state.rho, state.grid); }

std::vector<double> momentum(const State& state) {
    const Grid& g = state.grid;
    std::vector<double> P(static_cast<std::size_t>(g.n_dim), 0.0);
    ScalarField scratch(g.node_count);
    for (int d = 0; d < g.n_dim; ++d) {
        const auto& ud = state.u[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < g.node_count; ++i) scratch[i] = state.rho[i] * ud[i];
        P[static_cast<std::size_t>(d)] = integrate_raw(scratch, g);
    }
    return P;
}

ScalarField radius_squared(const Grid& grid) {
    ScalarField r2(grid.node_count);
    const std::size_t npts = static_cast<std::size_t>(grid.points_per_axis);
    for (std::size_t i = 0; i < grid.node_count; ++i) {
        double s = 0.0;
        for (int d = 0; d < grid.n_dim; ++d) {
            const double x = grid.coordinates[(i / grid.strides[static_cast<std::size_t>(d)]) % npts];
            s += x * x;
        }
        r2[i] = s;
    }
    return r2;
}

EnergyBreakdown energy_breakdown(const State& state, StencilOrder order) {
    const Grid& g = state.grid;
    const Params& p = state.params;
    const int n = g.n_dim;
    const std::size_t np = g.node_count;

    EnergyBreakdown b;
    b.t = state.time;
    b.P = momentum(state);
    b.m = mass(state);

    ScalarField scratch(np);

    for (std::size_t i = 0; i < np; ++i) {
        double usq = 0.0;
        for (int d = 0; d < n; ++d) {
            const double ud = state.u[static_cast<std::size_t>(d)][i];
            usq += ud * ud;
        }
        scratch[i] = 0.5 * state.rho[i] * usq;
    }
    b.E_k = integrate_raw(scratch, g);

    for (std::size_t i = 0; i < np; ++i) {
        double hsq = 0.0;
        for (int d = 0; d < n; ++d) {
            const double hd = state.H[static_cast<std::size_t>(d)][i];
            hsq += hd * hd;
        }
        scratch[i] = 0.5 * hsq;
    }
    b.E_m = integrate_raw(scratch, g);

    for (std::size_t i = 0; i < np; ++i) {
        const double r = state.rho[i] > 0.0 ? state.rho[i] : 0.0;
        scratch[i] = std::pow(r, p.gamma);
    }
    b.rho_Lgamma = integrate_raw(scratch, g);
    b.E_i = p.A / (p.gamma - 1.0) * b.rho_Lgamma;
    b.E_total = b.E_k + b.E_m + b.E_i;

    for (std::size_t i = 0; i < np; ++i) {
        const double r = state.rho[i] > 0.0 ? state.rho[i] : 0.0;
        scratch[i] = std::pow(r, 1.2);
    }
    b.rho_L65 = integrate_raw(scratch, g);

    for (std::size_t i = 0; i < np; ++i) {
        double usq = 0.0;
        for (int d = 0; d < n; ++d) {
            const double ud = state.u[static_cast<std::size_t>(d)][i];
            usq += ud * ud;
        }
        scratch[i] = usq * usq * usq;
    }
    b.u_L6 = integrate_raw(scratch, g);

    const ScalarField r2 = radius_squared(g);
    for (std::size_t i = 0; i < np; ++i) scratch[i] = 0.5 * state.rho[i] * r2[i];
    b.G = integrate_raw(scratch, g);

    const std::size_t npts = static_cast<std::size_t>(g.points_per_axis);
    for (std::size_t i = 0; i < np; ++i) {
        double ux = 0.0;
        for (int d = 0; d < n; ++d) {
            const double x = g.coordinates[(i / g.strides[static_cast<std::size_t>(d)]) % npts];
            ux += state.u[static_cast<std::size_t>(d)][i] * x;
        }
        scratch[i] = state.rho[i] * ux;
    }
    b.F = integrate_raw(scratch, g);
    b.Q = 4.0 * b.G * b.E_total - b.F * b.F;

    // Velocity Jacobian: grad_u_sq = sum_{ij} (d_i u_j)^2 and the exact viscous
    // dissipation (mu/2) sum_{ij} (d_i u_j + d_j u_i)^2 + lambda (div u)^2.
    std::vector<ScalarField> jac(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            jac[static_cast<std::size_t>(i * n + j)] =
                axis_derivative(state.u[static_cast<std::size_t>(j)], g, i, order);
        }
    }
    for (std::size_t q = 0; q < np; ++q) {
        double s = 0.0;
        for (int ij = 0; ij < n * n; ++ij) {
            const double v = jac[static_cast<std::size_t>(ij)][q];
            s += v * v;
        }
        scratch[q] = s;
    }
    b.grad_u_sq = integrate_raw(scratch, g);

    for (std::size_t q = 0; q < np; ++q) {
        double sym = 0.0;
        double div = 0.0;
        for (int i = 0; i < n; ++i) {
            div += jac[static_cast<std::size_t>(i * n + i)][q];
            for (int j = 0; j < n; ++j) {
                const double sij = jac[static_cast<std::size_t>(i * n + j)][q] +
                                   jac[static_cast<std::size_t>(j * n + i)][q];
                sym += sij * sij;
            }
        }
        scratch[q] = 0.5 * p.mu * sym + p.lambda * div * div;
    }
    const double viscous_dissipation = integrate_raw(scratch, g);

    double magnetic_dissipation = 0.0;
    if (n == 3) {
        const VectorField ch = curl(state.H, g, order);
        for (std::size_t q = 0; q < np; ++q) {
            scratch[q] = ch[0][q] * ch[0][q] + ch[1][q] * ch[1][q] + ch[2][q] * ch[2][q];
        }
        b.curl_H_sq = integrate_raw(scratch, g);
        magnetic_dissipation = p.nu * b.curl_H_sq;
    } else {
        b.curl_H_sq = 0.0;
    }
    b.dissipation = viscous_dissipation + magnetic_dissipation;

    const ScalarField dh = divergence(state.H, g, order);
    for (std::size_t q = 0; q < np; ++q) scratch[q] = dh[q] * dh[q];
    b.div_H_sq = integrate_raw(scratch, g);

    const int band = stencil_halfwidth(order);
    for (std::size_t q = 0; q < np; ++q) {
        scratch[q] = in_boundary_band(g, q, band) ? state.rho[q] : 0.0;
    }
    b.boundary_mass = integrate_raw(scratch, g);

    const double checks[] = {b.m,        b.E_k,      b.E_m,     b.E_i,    b.E_total,  b.G,
                             b.F,        b.Q,        b.grad_u_sq, b.curl_H_sq, b.u_L6, b.rho_L65,
                             b.rho_Lgamma, b.div_H_sq, b.dissipation, b.boundary_mass};
    for (double v : checks) {
        if (!std::isfinite(v)) throw std::runtime_error("energy_breakdown: non-finite functional value");
    }
    for (double v : b.P) {
        if (!std::isfinite(v)) throw std::runtime_error("energy_breakdown: non-finite momentum");
    }
    return b;
}

VectorField electric_field(const State& state, StencilOrder order) {
    if (state.grid.n_dim != 3) throw std::invalid_argument("electric_field: requires n_dim == 3");
    VectorField ch = curl(state.H, state.grid, order);
    const VectorField uxh = cross(state.u, state.H, state.grid);
    for (int d = 0; d < 3; ++d) {
        auto& cd = ch[static_cast<std::size_t>(d)];
        const auto& xd = uxh[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < state.grid.node_count; ++i) {
            cd[i] = state.params.nu * cd[i] - xd[i];
        }
    }
    return ch;
}

}  // namespace blowup
