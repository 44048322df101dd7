#include "blowup/solver.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "blowup/ops.hpp"

namespace blowup {

namespace {

void ensure_shape(Conserved& c, const Grid& g) {
    if (c.rho.size() != g.node_count) c.rho.assign(g.node_count, 0.0);
    auto fix = [&](VectorField& v) {
        if (v.size() != static_cast<std::size_t>(g.n_dim))
            v.assign(g.n_dim, ScalarField(g.node_count, 0.0));
        else
            for (auto& comp : v)
                if (comp.size() != g.node_count) comp.assign(g.node_count, 0.0);
    };
    fix(c.mom);
    fix(c.H);
}

void fill_zero(ScalarField& f) { std::fill(f.begin(), f.end(), 0.0); }

void power_density(const ScalarField& rho, double A, double gamma, ScalarField& out) {
    const std::size_t m = rho.size();
    if (gamma == 2.0) {
        for (std::size_t i = 0; i < m; ++i) {
            const double r = rho[i] > 0.0 ? rho[i] : 0.0;
            out[i] = A * r * r;
        }
    } else if (gamma == 1.5) {
        for (std::size_t i = 0; i < m; ++i) {
            const double r = rho[i] > 0.0 ? rho[i] : 0.0;
            out[i] = A * r * std::sqrt(r);
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            const double r = rho[i] > 0.0 ? rho[i] : 0.0;
            out[i] = A * std::pow(r, gamma);
        }
    }
}

struct StepMonitor {
    bool finite = true;
    double min_rho = std::numeric_limits<double>::infinity();
    double max_rho = -std::numeric_limits<double>::infinity();
    double total_mass = 0.0;     // weighted
    double subfloor_mass = 0.0;  // weighted, magnitudes of cells below floor
    double v_max = 0.0;
    double va_sq_max = 0.0;
    double rho_min_support = std::numeric_limits<double>::infinity();
};

StepMonitor run_monitor(const Conserved& y, const Grid& g, double floor, bool mhd) {
    StepMonitor mo;
    const int n = g.n_dim;
    double total = 0.0;
    double subfloor = 0.0;
    for (std::size_t i = 0; i < g.node_count; ++i) {
        const double r = y.rho[i];
        if (!std::isfinite(r)) {
            mo.finite = false;
            return mo;
        }
        if (r < mo.min_rho) mo.min_rho = r;
        if (r > mo.max_rho) mo.max_rho = r;
        total += r;
        double msq = 0.0;
        for (int d = 0; d < n; ++d) {
            const double md = y.mom[d][i];
            if (!std::isfinite(md)) {
                mo.finite = false;
                return mo;
            }
            msq += md * md;
        }
        if (r < floor) {
            subfloor += std::fabs(r);
        } else {
            if (r < mo.rho_min_support) mo.rho_min_support = r;
            const double v2 = msq / (r * r);
            if (v2 > mo.v_max) mo.v_max = v2;
        }
        if (mhd) {
            double h2 = 0.0;
            for (int d = 0; d < n; ++d) {
                const double hd = y.H[d][i];
                if (!std::isfinite(hd)) {
                    mo.finite = false;
                    return mo;
                }
                h2 += hd * hd;
            }
            const double va2 = h2 / (r > floor ? r : floor);
            if (va2 > mo.va_sq_max) mo.va_sq_max = va2;
        }
    }
    mo.v_max = std::sqrt(mo.v_max);
    mo.total_mass = total * g.quadrature_weight;
    mo.subfloor_mass = subfloor * g.quadrature_weight;
    return mo;
}

// Admissible step from monitored bounds: advective limit h / (|u| + c + vA)
// and parabolic limit h^2 / (2 n max(mu / rho_min_on_support, nu)), scaled by
// the CFL number. Vacuum everywhere (no support) is the caller's error.
double cfl_from_bounds(const Grid& g, const Params& p, double v_max, double max_rho,
                       double va_max, double rho_min_support, bool mhd,
                       double cfl_number) {
    if (!std::isfinite(rho_min_support))
        throw std::invalid_argument("cfl_dt: no density above the floor anywhere");
    const double h = g.spacing;
    const double c_max =
        std::sqrt(p.gamma * p.A * std::pow(max_rho > 0.0 ? max_rho : 0.0, p.gamma - 1.0));
    const double speed = v_max + c_max + va_max;
    const double inf = std::numeric_limits<double>::infinity();
    const double adv = speed > 0.0 ? h / speed : inf;

    double diffusivity = p.mu / rho_min_support;
    if (mhd && p.nu > diffusivity) diffusivity = p.nu;
    const double dif = diffusivity > 0.0 ? h * h / (2.0 * g.n_dim * diffusivity) : inf;

    return cfl_number * (adv < dif ? adv : dif);
}

}  // namespace

void SolverConfig::validate(const Grid& grid) const {
    (void)grid;
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw std::invalid_argument("t_end must be positive");
    if (!(density_floor >= 0.0) || !std::isfinite(density_floor))
        throw std::invalid_argument("density_floor must be nonnegative");
    if (!(vacuum_mass_tolerance > 0.0))
        throw std::invalid_argument("vacuum_mass_tolerance must be positive");
    if (sample_every < 1) throw std::invalid_argument("sample_every must be at least 1");
    if (!(cfl_number > 0.0 && cfl_number < 1.0))
        throw std::invalid_argument("cfl_number must lie in (0, 1)");
}

const char* termination_name(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::reached_t_end: return "reached-t_end";
        case TerminationReason::nan_detected: return "nan-detected";
        case TerminationReason::vacuum_detected: return "vacuum-detected";
        case TerminationReason::cfl_collapse: return "cfl-collapse";
    }
    return "unknown";
}

TerminationReason termination_from_name(const std::string& name) {
    if (name == "reached-t_end") return TerminationReason::reached_t_end;
    if (name == "nan-detected") return TerminationReason::nan_detected;
    if (name == "vacuum-detected") return TerminationReason::vacuum_detected;
    if (name == "cfl-collapse") return TerminationReason::cfl_collapse;
    throw std::invalid_argument("unknown termination reason: " + name);
}

Conserved to_conserved(const State& st) {
    Conserved y;
    y.rho = st.rho;
    y.H = st.H;
    y.mom.assign(st.grid.n_dim, ScalarField(st.grid.node_count, 0.0));
    for (int d = 0; d < st.grid.n_dim; ++d)
        for (std::size_t i = 0; i < st.grid.node_count; ++i)
            y.mom[d][i] = st.rho[i] * st.u[d][i];
    return y;
}

void masked_velocity(const ScalarField& rho, const VectorField& mom, double floor,
                     VectorField& u) {
    if (u.size() != mom.size()) u.assign(mom.size(), ScalarField(rho.size(), 0.0));
    for (std::size_t d = 0; d < mom.size(); ++d) {
        if (u[d].size() != rho.size()) u[d].assign(rho.size(), 0.0);
        for (std::size_t i = 0; i < rho.size(); ++i)
            u[d][i] = rho[i] > floor ? mom[d][i] / rho[i] : 0.0;
    }
}

State to_state(const Conserved& y, const Grid& grid, const Params& params, double floor,
               double time) {
    State st = make_state(grid, params);
    st.time = time;
    st.rho = y.rho;
    st.H = y.H;
    masked_velocity(y.rho, y.mom, floor, st.u);
    return st;
}

Stepper::Stepper(const Grid& grid, const Params& params, const SolverConfig& cfg)
    : grid_(grid), params_(params), cfg_(cfg) {
    params_.validate(grid_.n_dim);
    cfg_.validate(grid_);
    if (cfg_.mhd && grid_.n_dim != 3)
        throw std::invalid_argument("mhd mode requires three dimensions");
    const int n = grid_.n_dim;
    u_ = zeros_vector(grid_);
    jac_.assign(static_cast<std::size_t>(n) * n, zeros(grid_));
    div_u_ = zeros(grid_);
    pres_ = zeros(grid_);
    hsq_ = zeros(grid_);
    flux_ = zeros(grid_);
    deriv_ = zeros(grid_);
    if (cfg_.mhd && params_.nu > 0.0) {
        curl_a_ = zeros_vector(grid_);
        curl_b_ = zeros_vector(grid_);
    }
    for (Conserved* c : {&k1_, &k2_, &k3_, &k4_, &ytmp_}) ensure_shape(*c, grid_);
}

void Stepper::rhs(const Conserved& y, Conserved& dydt) {
    const Grid& g = grid_;
    const int n = g.n_dim;
    const std::size_t m = g.node_count;
    ensure_shape(dydt, g);

    masked_velocity(y.rho, y.mom, cfg_.density_floor, u_);

    fill_zero(dydt.rho);
    for (int d = 0; d < n; ++d) {
        for (std::size_t i = 0; i < m; ++i) flux_[i] = y.rho[i] * u_[d][i];
        axis_derivative(flux_, deriv_, g, d, cfg_.order);
        for (std::size_t i = 0; i < m; ++i) dydt.rho[i] -= deriv_[i];
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            axis_derivative(u_[j], jac_[static_cast<std::size_t>(i) * n + j], g, i, cfg_.order);
    fill_zero(div_u_);
    for (int d = 0; d < n; ++d) {
        const ScalarField& jdd = jac_[static_cast<std::size_t>(d) * n + d];
        for (std::size_t i = 0; i < m; ++i) div_u_[i] += jdd[i];
    }

    power_density(y.rho, params_.A, params_.gamma, pres_);

    if (cfg_.mhd) {
        fill_zero(hsq_);
        for (int d = 0; d < n; ++d)
            for (std::size_t i = 0; i < m; ++i) hsq_[i] += y.H[d][i] * y.H[d][i];
    }

    const double mu = params_.mu;
    const double lambda = params_.lambda;
    for (int j = 0; j < n; ++j) {
        fill_zero(dydt.mom[j]);
        for (int i = 0; i < n; ++i) {
            const ScalarField& jij = jac_[static_cast<std::size_t>(i) * n + j];
            const ScalarField& jji = jac_[static_cast<std::size_t>(j) * n + i];
            if (i == j) {
                for (std::size_t k = 0; k < m; ++k)
                    flux_[k] = u_[i][k] * y.mom[j][k] + pres_[k] -
                               mu * (jij[k] + jji[k]) - lambda * div_u_[k];
                if (cfg_.mhd)
                    for (std::size_t k = 0; k < m; ++k)
                        flux_[k] += 0.5 * hsq_[k] - y.H[i][k] * y.H[j][k];
            } else {
                for (std::size_t k = 0; k < m; ++k)
                    flux_[k] = u_[i][k] * y.mom[j][k] - mu * (jij[k] + jji[k]);
                if (cfg_.mhd)
                    for (std::size_t k = 0; k < m; ++k) flux_[k] -= y.H[i][k] * y.H[j][k];
            }
            axis_derivative(flux_, deriv_, g, i, cfg_.order);
            for (std::size_t k = 0; k < m; ++k) dydt.mom[j][k] -= deriv_[k];
        }
    }

    for (int j = 0; j < n; ++j) fill_zero(dydt.H[j]);
    if (cfg_.mhd) {
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                for (std::size_t k = 0; k < m; ++k)
                    flux_[k] = u_[j][k] * y.H[i][k] - u_[i][k] * y.H[j][k];
                axis_derivative(flux_, deriv_, g, i, cfg_.order);
                for (std::size_t k = 0; k < m; ++k) dydt.H[j][k] += deriv_[k];
            }
        }
        if (params_.nu > 0.0) {
            curl(y.H, curl_a_, g, cfg_.order);
            curl(curl_a_, curl_b_, g, cfg_.order);
            for (int j = 0; j < n; ++j)
                for (std::size_t k = 0; k < m; ++k) dydt.H[j][k] -= params_.nu * curl_b_[j][k];
        }
    }
}

double Stepper::stable_dt_limit(const Conserved& y) const {
    const StepMonitor mo = run_monitor(y, grid_, cfg_.density_floor, cfg_.mhd);
    if (!mo.finite) throw std::invalid_argument("state is not finite");
    return cfl_from_bounds(grid_, params_, mo.v_max, mo.max_rho, std::sqrt(mo.va_sq_max),
                           mo.rho_min_support, cfg_.mhd, 1.0);
}

void Stepper::step(Conserved& y, double t, double dt, const ForcingFn* forcing) {
    const int n = grid_.n_dim;
    const std::size_t m = grid_.node_count;
    ensure_shape(y, grid_);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (dt > stable_dt_limit(y))
        throw std::invalid_argument("dt exceeds the stability limit of the current state");

    auto stage = [&](const Conserved& base, const Conserved& slope, double coef,
                     Conserved& out) {
        for (std::size_t i = 0; i < m; ++i) out.rho[i] = base.rho[i] + coef * slope.rho[i];
        for (int d = 0; d < n; ++d) {
            for (std::size_t i = 0; i < m; ++i)
                out.mom[d][i] = base.mom[d][i] + coef * slope.mom[d][i];
            for (std::size_t i = 0; i < m; ++i)
                out.H[d][i] = base.H[d][i] + coef * slope.H[d][i];
        }
    };

    rhs(y, k1_);
    if (forcing) (*forcing)(t, k1_);
    stage(y, k1_, 0.5 * dt, ytmp_);
    rhs(ytmp_, k2_);
    if (forcing) (*forcing)(t + 0.5 * dt, k2_);
    stage(y, k2_, 0.5 * dt, ytmp_);
    rhs(ytmp_, k3_);
    if (forcing) (*forcing)(t + 0.5 * dt, k3_);
    stage(y, k3_, dt, ytmp_);
    rhs(ytmp_, k4_);
    if (forcing) (*forcing)(t + dt, k4_);

    const double c = dt / 6.0;
    for (std::size_t i = 0; i < m; ++i)
        y.rho[i] += c * (k1_.rho[i] + 2.0 * k2_.rho[i] + 2.0 * k3_.rho[i] + k4_.rho[i]);
    for (int d = 0; d < n; ++d) {
        for (std::size_t i = 0; i < m; ++i)
            y.mom[d][i] +=
                c * (k1_.mom[d][i] + 2.0 * k2_.mom[d][i] + 2.0 * k3_.mom[d][i] + k4_.mom[d][i]);
        for (std::size_t i = 0; i < m; ++i)
            y.H[d][i] +=
                c * (k1_.H[d][i] + 2.0 * k2_.H[d][i] + 2.0 * k3_.H[d][i] + k4_.H[d][i]);
    }
}

double cfl_dt(const State& st, double density_floor, double cfl_number, bool mhd) {
    const Grid& g = st.grid;
    double v_max = 0.0, max_rho = -std::numeric_limits<double>::infinity();
    double va_sq_max = 0.0;
    double rho_min_support = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.node_count; ++i) {
        const double r = st.rho[i];
        if (r > max_rho) max_rho = r;
        double v2 = 0.0;
        for (int d = 0; d < g.n_dim; ++d) v2 += st.u[d][i] * st.u[d][i];
        if (v2 > v_max) v_max = v2;
        if (r > density_floor && r < rho_min_support) rho_min_support = r;
        if (mhd) {
            double h2 = 0.0;
            for (int d = 0; d < g.n_dim; ++d) h2 += st.H[d][i] * st.H[d][i];
            const double va2 = h2 / (r > density_floor ? r : density_floor);
            if (va2 > va_sq_max) va_sq_max = va2;
        }
    }
    return cfl_from_bounds(g, st.params, std::sqrt(v_max), max_rho, std::sqrt(va_sq_max),
                           rho_min_support, mhd, cfl_number);
}

Trajectory run_simulation(const State& initial, const SolverConfig& cfg) {
    const Grid& g = initial.grid;
    initial.params.validate(g.n_dim);
    cfg.validate(g);
    if (!cfg.mhd)
        for (const auto& comp : initial.H)
            for (double v : comp)
                if (v != 0.0)
                    throw std::invalid_argument("ns mode requires a zero magnetic field");

    long n_steps = 0;
    if (cfg.dt_policy == DtPolicy::fixed) {
        n_steps = std::llround(cfg.t_end / cfg.dt);
        if (n_steps < 1 || std::fabs(static_cast<double>(n_steps) * cfg.dt - cfg.t_end) >
                               1e-9 * cfg.t_end)
            throw std::invalid_argument("t_end must be a positive multiple of dt");
    }

    Conserved y = to_conserved(initial);
    Stepper stepper(g, initial.params, cfg);

    Trajectory traj;
    traj.config = cfg;
    RunStats& stats = traj.stats;
    stats.mass_initial = integrate(y.rho, g);
    stats.momentum_initial.assign(static_cast<std::size_t>(g.n_dim), 0.0);
    for (int d = 0; d < g.n_dim; ++d) stats.momentum_initial[d] = integrate(y.mom[d], g);
    stats.min_density = std::numeric_limits<double>::infinity();

    auto sample = [&](double t) {
        State st = to_state(y, g, initial.params, cfg.density_floor, t);
        EnergyBreakdown e = energy_breakdown(st, cfg.order);
        double div_rel = 0.0;
        if (e.curl_H_sq > 0.0)
            div_rel = std::sqrt(e.div_H_sq / e.curl_H_sq);
        else if (e.div_H_sq > 0.0)
            div_rel = std::sqrt(e.div_H_sq);
        if (div_rel > stats.max_div_h_rel) stats.max_div_h_rel = div_rel;
        const double res = second_difference_energy_fraction(st.rho, g);
        if (res > stats.resolution_fraction) stats.resolution_fraction = res;
        if (cfg.mhd && g.n_dim == 3 && e.curl_H_sq > 0.0) {
            VectorField curl_h = zeros_vector(g), lor_curl = zeros_vector(g),
                        lor_div = zeros_vector(g);
            curl(st.H, curl_h, g, cfg.order);
            cross(curl_h, st.H, lor_curl);
            ScalarField hsq = zeros(g), fl = zeros(g), dv = zeros(g);
            for (int d = 0; d < g.n_dim; ++d)
                for (std::size_t i = 0; i < g.node_count; ++i)
                    hsq[i] += st.H[d][i] * st.H[d][i];
            for (int j = 0; j < g.n_dim; ++j) {
                for (int i = 0; i < g.n_dim; ++i) {
                    for (std::size_t k = 0; k < g.node_count; ++k)
                        fl[k] = st.H[i][k] * st.H[j][k] - (i == j ? 0.5 * hsq[k] : 0.0);
                    axis_derivative(fl, dv, g, i, cfg.order);
                    for (std::size_t k = 0; k < g.node_count; ++k) lor_div[j][k] += dv[k];
                }
            }
            double num = 0.0, den = 0.0;
            for (int j = 0; j < g.n_dim; ++j)
                for (std::size_t k = 0; k < g.node_count; ++k) {
                    const double diff = lor_div[j][k] - lor_curl[j][k];
                    num += diff * diff;
                    den += lor_curl[j][k] * lor_curl[j][k];
                }
            const double rel = den > 0.0 ? std::sqrt(num / den) : 0.0;
            if (rel > stats.max_lorentz_discrepancy) stats.max_lorentz_discrepancy = rel;
        }
        traj.samples.push_back(e);
    };

    auto absorb = [&](const StepMonitor& mo) {
        if (mo.min_rho < stats.min_density) stats.min_density = mo.min_rho;
        const double frac =
            mo.total_mass > 0.0 ? mo.subfloor_mass / mo.total_mass
                                : std::numeric_limits<double>::infinity();
        if (frac > stats.max_subfloor_mass_fraction) stats.max_subfloor_mass_fraction = frac;
        return frac;
    };

    StepMonitor mo = run_monitor(y, g, cfg.density_floor, cfg.mhd);
    if (!mo.finite) throw std::invalid_argument("initial state is not finite");
    double frac = absorb(mo);
    sample(0.0);
    traj.reason = TerminationReason::reached_t_end;
    double t_done = 0.0;
    const double t_tol = 1e-12 * cfg.t_end;
    if (frac > cfg.vacuum_mass_tolerance) {
        traj.reason = TerminationReason::vacuum_detected;
    } else {
        long k = 0;
        bool finished = false;
        while (!finished) {
            double scaled_limit;
            try {
                scaled_limit = cfl_from_bounds(g, initial.params, mo.v_max, mo.max_rho,
                                               std::sqrt(mo.va_sq_max), mo.rho_min_support,
                                               cfg.mhd, cfg.cfl_number);
            } catch (const std::invalid_argument&) {
                traj.reason = TerminationReason::cfl_collapse;
                break;
            }
            double dt;
            if (cfg.dt_policy == DtPolicy::fixed) {
                if (scaled_limit < cfg.dt) {
                    traj.reason = TerminationReason::cfl_collapse;
                    break;
                }
                dt = cfg.dt;
            } else {
                if (scaled_limit < 1e-9 * cfg.t_end) {
                    traj.reason = TerminationReason::cfl_collapse;
                    break;
                }
                dt = std::min(scaled_limit, cfg.dt);
                if (t_done + dt > cfg.t_end - t_tol) dt = cfg.t_end - t_done;
            }
            stepper.step(y, t_done, dt);
            ++k;
            const double t = cfg.dt_policy == DtPolicy::fixed
                                 ? static_cast<double>(k) * cfg.dt
                                 : t_done + dt;
            finished = cfg.dt_policy == DtPolicy::fixed ? k == n_steps
                                                        : t >= cfg.t_end - t_tol;
            mo = run_monitor(y, g, cfg.density_floor, cfg.mhd);
            if (!mo.finite) {
                traj.reason = TerminationReason::nan_detected;
                t_done = t;
                break;
            }
            frac = absorb(mo);
            if (frac > cfg.vacuum_mass_tolerance) {
                sample(t);
                traj.reason = TerminationReason::vacuum_detected;
                t_done = t;
                break;
            }
            if (k % cfg.sample_every == 0 || finished) sample(t);
            t_done = t;
        }
        stats.steps_completed = k;
    }

    stats.mass_final = integrate(y.rho, g);
    stats.momentum_final.assign(static_cast<std::size_t>(g.n_dim), 0.0);
    for (int d = 0; d < g.n_dim; ++d) stats.momentum_final[d] = integrate(y.mom[d], g);
    const double mscale = std::fabs(stats.mass_initial);
    stats.mass_drift_rel = mscale > 0.0
                               ? std::fabs(stats.mass_final - stats.mass_initial) / mscale
                               : std::fabs(stats.mass_final);
    for (int d = 0; d < g.n_dim; ++d) {
        const double drift = std::fabs(stats.momentum_final[d] - stats.momentum_initial[d]);
        if (drift > stats.momentum_drift_abs) stats.momentum_drift_abs = drift;
    }
    traj.final_state = to_state(y, g, initial.params, cfg.density_floor, t_done);
    return traj;
}

}  // namespace blowup
