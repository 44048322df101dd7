#include "blowup/run_config.hpp"

#include <stdexcept>

#include "json.hpp"

namespace blowup {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) known = known || it.key() == key;
        if (!known) bad(std::string("config: unknown key \"") + it.key() + "\" in " + where);
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) bad(std::string("config: ") + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) bad(std::string("config: ") + key + " must be an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) bad(std::string("config: ") + key + " must be a string");
    return v.get<std::string>();
}

void merge_grid(GaussianScenario& sc, const json& g) {
    require_keys(g, "grid", {"n_dim", "half_extent", "points_per_axis"});
    sc.n_dim = get_int(g, "n_dim", sc.n_dim);
    sc.half_extent = get_number(g, "half_extent", sc.half_extent);
    sc.points_per_axis = get_int(g, "points_per_axis", sc.points_per_axis);
}

void merge_params(Params& p, const json& obj) {
    require_keys(obj, "params", {"A", "gamma", "mu", "lambda", "nu"});
    p.A = get_number(obj, "A", p.A);
    p.gamma = get_number(obj, "gamma", p.gamma);
    p.mu = get_number(obj, "mu", p.mu);
    p.lambda = get_number(obj, "lambda", p.lambda);
    p.nu = get_number(obj, "nu", p.nu);
}

void merge_h_spec(HSpec& h, const json& obj) {
    require_keys(obj, "h_spec", {"kind", "amplitude", "width"});
    const std::string kind = get_string(obj, "kind", h.kind == HSpecKind::loop ? "loop" : "zero");
    if (kind == "zero")
        h.kind = HSpecKind::zero;
    else if (kind == "loop")
        h.kind = HSpecKind::loop;
    else
        bad("config: h_spec.kind must be \"zero\" or \"loop\"");
    h.amplitude = get_number(obj, "amplitude", h.amplitude);
    h.width = get_number(obj, "width", h.width);
}

void merge_scenario(GaussianScenario& sc, const json& obj) {
    require_keys(obj, "scenario",
                 {"name", "n_dim", "half_extent", "points_per_axis", "params", "rho_bar", "s",
                  "U", "u_envelope_width", "rho_background", "h_spec"});
    sc.name = get_string(obj, "name", sc.name);
    sc.n_dim = get_int(obj, "n_dim", sc.n_dim);
    sc.half_extent = get_number(obj, "half_extent", sc.half_extent);
    sc.points_per_axis = get_int(obj, "points_per_axis", sc.points_per_axis);
    if (obj.contains("params")) merge_params(sc.params, obj.at("params"));
    sc.rho_bar = get_number(obj, "rho_bar", sc.rho_bar);
    sc.s = get_number(obj, "s", sc.s);
    if (obj.contains("U")) {
        const json& u = obj.at("U");
        if (!u.is_array()) bad("config: U must be an array of numbers");
        sc.U.clear();
        for (const json& v : u) {
            if (!v.is_number()) bad("config: U must be an array of numbers");
            sc.U.push_back(v.get<double>());
        }
    }
    sc.u_envelope_width = get_number(obj, "u_envelope_width", sc.u_envelope_width);
    sc.rho_background = get_number(obj, "rho_background", sc.rho_background);
    if (obj.contains("h_spec")) merge_h_spec(sc.h_spec, obj.at("h_spec"));
}

void merge_solver(SolverConfig& s, const json& obj) {
    require_keys(obj, "solver",
                 {"order", "dt_policy", "dt", "t_end", "density_floor",
                  "vacuum_mass_tolerance", "sample_every", "mode", "cfl_number"});
    const int order = get_int(obj, "order", s.order == StencilOrder::second ? 2 : 4);
    if (order == 2)
        s.order = StencilOrder::second;
    else if (order == 4)
        s.order = StencilOrder::fourth;
    else
        bad("config: solver.order must be 2 or 4");
    const std::string policy = get_string(
        obj, "dt_policy", s.dt_policy == DtPolicy::cfl_scaled ? "cfl-scaled" : "fixed");
    if (policy == "fixed")
        s.dt_policy = DtPolicy::fixed;
    else if (policy == "cfl-scaled")
        s.dt_policy = DtPolicy::cfl_scaled;
    else
        bad("config: solver.dt_policy must be \"fixed\" or \"cfl-scaled\"");
    s.dt = get_number(obj, "dt", s.dt);
    s.t_end = get_number(obj, "t_end", s.t_end);
    s.density_floor = get_number(obj, "density_floor", s.density_floor);
    s.vacuum_mass_tolerance = get_number(obj, "vacuum_mass_tolerance", s.vacuum_mass_tolerance);
    s.sample_every = get_int(obj, "sample_every", s.sample_every);
    const std::string mode = get_string(obj, "mode", s.mhd ? "mhd" : "ns");
    if (mode == "mhd")
        s.mhd = true;
    else if (mode == "ns")
        s.mhd = false;
    else
        bad("config: solver.mode must be \"mhd\" or \"ns\"");
    s.cfl_number = get_number(obj, "cfl_number", s.cfl_number);
}

void merge_outputs(OutputSpec& o, const json& obj) {
    require_keys(obj, "outputs", {"csv_path", "json_path", "snapshot_dir"});
    o.csv_path = get_string(obj, "csv_path", o.csv_path);
    o.json_path = get_string(obj, "json_path", o.json_path);
    o.snapshot_dir = get_string(obj, "snapshot_dir", o.snapshot_dir);
}

}  // namespace

void RunConfig::validate() const {
    const Grid grid = scenario_grid(scenario);
    scenario.params.validate(grid.n_dim);
    solver.validate(grid);
    if (solver.mhd && grid.n_dim != 3)
        throw std::invalid_argument("config: mhd mode requires n_dim == 3");
    if (!solver.mhd && scenario.h_spec.kind != HSpecKind::zero)
        throw std::invalid_argument("config: ns mode requires a zero magnetic profile");
}

RunConfig preset_run(const std::string& scenario_name) {
    RunConfig cfg;
    cfg.scenario = find_scenario(scenario_name);
    SolverConfig& s = cfg.solver;
    s.sample_every = 5;
    if (scenario_name == "gaussian-ns") {
        s.dt = 2e-3;
        s.t_end = 1.0;
        s.density_floor = 1e-3;
        s.mhd = false;
    } else if (scenario_name == "gaussian-pedestal") {
        s.dt = 2e-3;
        s.t_end = 2.0;
        s.density_floor = 1e-3;
    } else if (scenario_name == "uniform-static") {
        s.dt = 5e-3;
        s.t_end = 0.5;
        s.density_floor = 1e-8;
    } else {
        // gaussian-mhd, gaussian-soft, gaussian-control
        s.dt = 1.5e-3;
        s.t_end = 0.3;
        s.density_floor = 5e-8;
    }
    return cfg;
}

RunConfig parse_run_config(const std::string& json_text) {
    json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded()) bad("config: malformed JSON");
    if (!root.is_object()) bad("config: top level must be an object");
    require_keys(root, "config", {"scenario", "grid", "params", "solver", "outputs"});

    if (!root.contains("scenario")) bad("config: scenario is required");
    RunConfig cfg;
    const json& sc = root.at("scenario");
    if (sc.is_string()) {
        cfg = preset_run(sc.get<std::string>());
    } else if (sc.is_object()) {
        if (sc.contains("name") && sc.at("name").is_string()) {
            try {
                cfg = preset_run(sc.at("name").get<std::string>());
            } catch (const std::invalid_argument&) {
                // inline scenario under a fresh name
            }
        }
        merge_scenario(cfg.scenario, sc);
        if (cfg.scenario.name.empty()) cfg.scenario.name = "inline";
    } else {
        bad("config: scenario must be a preset name or an object");
    }

    if (root.contains("grid")) merge_grid(cfg.scenario, root.at("grid"));
    if (root.contains("params")) merge_params(cfg.scenario.params, root.at("params"));
    if (root.contains("solver")) merge_solver(cfg.solver, root.at("solver"));
    if (root.contains("outputs")) merge_outputs(cfg.outputs, root.at("outputs"));
    cfg.validate();
    return cfg;
}

RunConfig read_run_config(const std::string& path) {
    return parse_run_config(read_text_file(path));
}

JsonValue scenario_value(const GaussianScenario& sc) {
    JsonValue v = JsonValue::object();
    v.set("name", sc.name);
    v.set("n_dim", sc.n_dim);
    v.set("half_extent", sc.half_extent);
    v.set("points_per_axis", sc.points_per_axis);
    JsonValue params = JsonValue::object();
    params.set("A", sc.params.A);
    params.set("gamma", sc.params.gamma);
    params.set("mu", sc.params.mu);
    params.set("lambda", sc.params.lambda);
    params.set("nu", sc.params.nu);
    v.set("params", std::move(params));
    v.set("rho_bar", sc.rho_bar);
    v.set("s", sc.s);
    JsonValue u = JsonValue::array();
    for (double c : sc.U) u.push(JsonValue::number(c));
    v.set("U", std::move(u));
    v.set("u_envelope_width", sc.u_envelope_width);
    v.set("rho_background", sc.rho_background);
    JsonValue h = JsonValue::object();
    h.set("kind", sc.h_spec.kind == HSpecKind::loop ? "loop" : "zero");
    h.set("amplitude", sc.h_spec.amplitude);
    h.set("width", sc.h_spec.width);
    v.set("h_spec", std::move(h));
    return v;
}

JsonValue solver_config_value(const SolverConfig& cfg) {
    JsonValue v = JsonValue::object();
    v.set("order", cfg.order == StencilOrder::second ? 2 : 4);
    v.set("dt_policy", cfg.dt_policy == DtPolicy::cfl_scaled ? "cfl-scaled" : "fixed");
    v.set("dt", cfg.dt);
    v.set("t_end", cfg.t_end);
    v.set("density_floor", cfg.density_floor);
    v.set("vacuum_mass_tolerance", cfg.vacuum_mass_tolerance);
    v.set("sample_every", cfg.sample_every);
    v.set("mode", cfg.mhd ? "mhd" : "ns");
    v.set("cfl_number", cfg.cfl_number);
    return v;
}

JsonValue run_config_value(const RunConfig& cfg) {
    JsonValue v = JsonValue::object();
    v.set("scenario", scenario_value(cfg.scenario));
    v.set("solver", solver_config_value(cfg.solver));
    JsonValue out = JsonValue::object();
    out.set("csv_path", cfg.outputs.csv_path);
    out.set("json_path", cfg.outputs.json_path);
    out.set("snapshot_dir", cfg.outputs.snapshot_dir);
    v.set("outputs", std::move(out));
    return v;
}

}  // namespace blowup
