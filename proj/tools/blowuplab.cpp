#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blowup/cli_commands.hpp"
#include "blowup/csv.hpp"

namespace {

using namespace blowup;

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

// Accepts a run-config JSON or a run-metadata JSON (whose "config" member is
// the config echo) and returns the physical parameters it carries.
Params params_from_config_file(const std::string& path) {
    nlohmann::json root = nlohmann::json::parse(read_text_file(path), nullptr, false);
    if (root.is_discarded() || !root.is_object())
        throw std::invalid_argument("config: malformed JSON in " + path);
    if (root.contains("config")) root = root.at("config");
    return parse_run_config(root.dump()).scenario.params;
}

ToleranceSet parse_tolerance_overrides(const std::vector<std::string>& overrides) {
    ToleranceSet tol;
    for (const std::string& item : overrides) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw std::invalid_argument("--tolerance-class expects NAME=VALUE, got \"" +
                                        item + "\"");
        std::size_t used = 0;
        const std::string digits = item.substr(eq + 1);
        double value = 0.0;
        try {
            value = std::stod(digits, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != digits.size())
            throw std::invalid_argument("--tolerance-class value is not a number: " + item);
        tol.set(item.substr(0, eq), value);
    }
    return tol;
}

std::vector<int> levels_from_grid_flag(const std::vector<int>& grids) {
    if (grids.empty()) return {24, 32, 48};
    if (grids.size() >= 2) return grids;
    const int finest = grids.front();
    auto even = [](int v) { return v - (v % 2); };
    return {even(finest / 2), even(2 * finest / 3), even(finest)};
}

// --out takes either a .json file path or a directory that receives the
// subcommand's default file name.
std::string json_out_path(const std::string& out, const char* default_name) {
    if (out.empty()) return {};
    if (out.size() > 5 && out.compare(out.size() - 5, 5, ".json") == 0) return out;
    return out + "/" + default_name;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"functional laboratory for barotropic compressible MHD/NS on a periodic box"};
    app.require_subcommand(1);

    std::string config_path, out_dir, scenario_name, mode, dt_policy, csv_path;
    int n_dim = 3, sample_every = 0, order = 0, sim_grid = 0;
    std::vector<int> oracle_grids;
    double gamma = 0, dt = 0, t_end = 0, cfl = 0, floor = 0;
    double A = 0, mu = 0, lambda = 0, nu = 0;
    std::vector<std::string> tol_overrides;
    bool no_snapshots = false;
    ConstantsInput cin_defaults;

    CLI::App* sim = app.add_subcommand("simulate", "run a scenario and write its trajectory");
    auto* sim_config = sim->add_option("--config", config_path, "run-config JSON file")
                           ->check(CLI::ExistingFile);
    auto* sim_scenario = sim->add_option("--scenario", scenario_name, "library scenario name");
    sim->add_option("--out", out_dir, "output directory (default: out)");
    auto* sim_mode = sim->add_option("--mode", mode, "mhd or ns")
                         ->check(CLI::IsMember({"mhd", "ns"}));
    auto* sim_ndim = sim->add_option("--n-dim", n_dim, "spatial dimension");
    auto* sim_grid_opt = sim->add_option("--grid", sim_grid, "points per axis");
    auto* sim_gamma = sim->add_option("--gamma", gamma, "adiabatic exponent");
    auto* sim_dt = sim->add_option("--dt", dt, "time step (ceiling under cfl-scaled policy)");
    auto* sim_tend = sim->add_option("--t-end", t_end, "integration horizon");
    auto* sim_sample = sim->add_option("--sample-every", sample_every, "steps between samples");
    auto* sim_order = sim->add_option("--order", order, "stencil order")
                          ->check(CLI::IsMember({2, 4}));
    auto* sim_policy = sim->add_option("--dt-policy", dt_policy, "fixed or cfl-scaled")
                           ->check(CLI::IsMember({"fixed", "cfl-scaled"}));
    auto* sim_cfl = sim->add_option("--cfl", cfl, "CFL number in (0, 1)");
    auto* sim_floor = sim->add_option("--density-floor", floor, "vacuum monitor threshold");
    sim->add_flag("--no-snapshots", no_snapshots, "skip MHDS snapshot output");

    CLI::App* chk = app.add_subcommand("check", "evaluate the certificate suite on a trajectory CSV");
    chk->add_option("csv", csv_path, "trajectory CSV path")
        ->required()
        ->check(CLI::ExistingFile);
    auto* chk_config = chk->add_option("--config", config_path,
                                       "run-config or run-metadata JSON supplying the parameters")
                           ->check(CLI::ExistingFile);
    chk->add_option("--out", out_dir, "certificates.json path or directory for it");
    auto* chk_gamma = chk->add_option("--gamma", gamma, "adiabatic exponent");
    auto* chk_A = chk->add_option("--A", A, "pressure coefficient");
    auto* chk_mu = chk->add_option("--mu", mu, "shear viscosity");
    auto* chk_lambda = chk->add_option("--lambda", lambda, "bulk viscosity");
    auto* chk_nu = chk->add_option("--nu", nu, "magnetic diffusivity");
    chk->add_option("--tolerance-class", tol_overrides,
                    "override NAME=VALUE (exact-to-roundoff, truncation-error, contamination-fraction)");

    CLI::App* con = app.add_subcommand("constants", "print the inequality-chain constants");
    auto* con_config = con->add_option("--config", config_path,
                                       "run-config or run-metadata JSON supplying the parameters")
                           ->check(CLI::ExistingFile);
    con->add_option("--out", out_dir, "constants.json path or directory for it");
    auto* con_gamma = con->add_option("--gamma", gamma, "adiabatic exponent");
    auto* con_A = con->add_option("--A", A, "pressure coefficient");
    auto* con_mu = con->add_option("--mu", mu, "shear viscosity");
    auto* con_lambda = con->add_option("--lambda", lambda, "bulk viscosity");
    auto* con_nu = con->add_option("--nu", nu, "magnetic diffusivity");
    auto* con_ndim = con->add_option("--n-dim", n_dim, "spatial dimension");
    con->add_option("--m", cin_defaults.m, "total mass");
    con->add_option("--momentum", cin_defaults.momentum_norm, "momentum magnitude |P|");
    con->add_option("--E0", cin_defaults.E0, "initial total energy");
    con->add_option("--G0", cin_defaults.G0, "initial inertia moment");
    con->add_option("--F0", cin_defaults.F0, "initial radial momentum");
    con->add_option("--Q0", cin_defaults.Q0, "initial Q functional");

    CLI::App* ora = app.add_subcommand("oracle", "quadrature convergence study against closed forms");
    auto* ora_scenario = ora->add_option("--scenario", scenario_name, "library scenario name");
    ora->add_option("--out", out_dir, "oracle.json path or directory for it");
    auto* ora_grid = ora->add_option("--grid", oracle_grids,
                                     "grid level; one value sets the finest level, repeats "
                                     "give the full ladder (default 24 32 48)");
    auto* ora_gamma = ora->add_option("--gamma", gamma, "adiabatic exponent");
    auto* ora_ndim = ora->add_option("--n-dim", n_dim, "spatial dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (sim->parsed()) {
            if (given(sim_config) && given(sim_scenario))
                throw std::invalid_argument("simulate: --config and --scenario are exclusive");
            RunConfig cfg = given(sim_config)
                                ? read_run_config(config_path)
                                : preset_run(given(sim_scenario) ? scenario_name : "gaussian-mhd");
            if (given(sim_mode)) cfg.solver.mhd = mode == "mhd";
            if (given(sim_ndim)) cfg.scenario.n_dim = n_dim;
            if (given(sim_grid_opt)) cfg.scenario.points_per_axis = sim_grid;
            if (given(sim_gamma)) cfg.scenario.params.gamma = gamma;
            if (given(sim_dt)) cfg.solver.dt = dt;
            if (given(sim_tend)) cfg.solver.t_end = t_end;
            if (given(sim_sample)) cfg.solver.sample_every = sample_every;
            if (given(sim_order))
                cfg.solver.order = order == 2 ? StencilOrder::second : StencilOrder::fourth;
            if (given(sim_policy))
                cfg.solver.dt_policy =
                    dt_policy == "fixed" ? DtPolicy::fixed : DtPolicy::cfl_scaled;
            if (given(sim_cfl)) cfg.solver.cfl_number = cfl;
            if (given(sim_floor)) cfg.solver.density_floor = floor;
            const std::string dir = out_dir.empty() ? "out" : out_dir;
            if (cfg.outputs.csv_path.empty()) cfg.outputs.csv_path = dir + "/trajectory.csv";
            if (cfg.outputs.json_path.empty()) cfg.outputs.json_path = dir + "/run.json";
            if (cfg.outputs.snapshot_dir.empty() && !no_snapshots)
                cfg.outputs.snapshot_dir = dir;
            if (no_snapshots) cfg.outputs.snapshot_dir.clear();
            return cmd_simulate(cfg, std::cout);
        }
        if (chk->parsed()) {
            Params params;
            if (given(chk_config)) params = params_from_config_file(config_path);
            if (given(chk_gamma)) params.gamma = gamma;
            if (given(chk_A)) params.A = A;
            if (given(chk_mu)) params.mu = mu;
            if (given(chk_lambda)) params.lambda = lambda;
            if (given(chk_nu)) params.nu = nu;
            const ToleranceSet tol = parse_tolerance_overrides(tol_overrides);
            const std::string json_path =
                json_out_path(out_dir, "certificates.json");
            return cmd_check(csv_path, params, tol, json_path, std::cout);
        }
        if (con->parsed()) {
            ConstantsInput in = cin_defaults;
            in.params.mu = 1.0;  // unit normalization unless overridden
            if (given(con_config)) in.params = params_from_config_file(config_path);
            if (given(con_gamma)) in.params.gamma = gamma;
            if (given(con_A)) in.params.A = A;
            if (given(con_mu)) in.params.mu = mu;
            if (given(con_lambda)) in.params.lambda = lambda;
            if (given(con_nu)) in.params.nu = nu;
            if (given(con_ndim)) in.n_dim = n_dim;
            const std::string json_path =
                json_out_path(out_dir, "constants.json");
            return cmd_constants(in, json_path, std::cout);
        }
        if (ora->parsed()) {
            GaussianScenario sc = given(ora_scenario)
                                      ? find_scenario(scenario_name)
                                      : oracle_scenario(given(ora_ndim) ? n_dim : 3,
                                                        given(ora_gamma) ? gamma : 2.0);
            if (given(ora_scenario) && given(ora_gamma)) sc.params.gamma = gamma;
            if (given(ora_scenario) && given(ora_ndim)) sc.n_dim = n_dim;
            const std::vector<int> levels = levels_from_grid_flag(given(ora_grid)
                                                                      ? oracle_grids
                                                                      : std::vector<int>{});
            const std::string json_path =
                json_out_path(out_dir, "oracle.json");
            return cmd_oracle(sc, levels, json_path, std::cout);
        }
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitInputError;
}
