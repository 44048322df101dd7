#pragma once

#include <string>

#include "blowup/jsonio.hpp"
#include "blowup/scenarios.hpp"
#include "blowup/solver.hpp"

namespace blowup {

struct OutputSpec {
    std::string csv_path;      // empty: <out_dir>/trajectory.csv
    std::string json_path;     // empty: <out_dir>/run.json
    std::string snapshot_dir;  // empty: no snapshots written
};

// Everything one simulation run needs: initial data (the scenario carries its
// own box and physical parameters), solver settings, and output paths.
struct RunConfig {
    GaussianScenario scenario;
    SolverConfig solver;
    OutputSpec outputs;

    void validate() const;
};

// Library scenario plus the solver settings it is tuned for; throws
// std::invalid_argument on an unknown name.
RunConfig preset_run(const std::string& scenario_name);

// Config JSON schema: top-level keys scenario (preset name or inline object),
// grid, params, solver, outputs. grid/params/solver entries override the
// preset they apply to; unknown keys anywhere are errors. Throws
// std::invalid_argument with a description on any parse or schema problem.
RunConfig parse_run_config(const std::string& json_text);
RunConfig read_run_config(const std::string& path);

// Deterministic serialization; parse(serialize(c)) reproduces c exactly.
JsonValue run_config_value(const RunConfig& cfg);
JsonValue scenario_value(const GaussianScenario& sc);
JsonValue solver_config_value(const SolverConfig& cfg);

}  // namespace blowup
