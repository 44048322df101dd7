#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "blowup/certificates.hpp"
#include "blowup/convergence.hpp"
#include "blowup/run_config.hpp"

namespace blowup {

// Exit-code contract shared by every subcommand: 0 success, 1 a certificate
// or study failed, 2 bad input (config/schema), 3 runtime failure. The
// commands return codes for contract outcomes and throw for input problems
// (std::invalid_argument, SchemaError), which the CLI maps to 2.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitRuntimeError = 3;

// Runs the configured scenario; writes the trajectory CSV, the run-metadata
// JSON (config echo, termination, drift statistics), and, when snapshot_dir
// is set, initial/final MHDS snapshots. Returns 0 when the run reached t_end,
// 3 on any early termination (the reason is printed and recorded).
int cmd_simulate(const RunConfig& cfg, std::ostream& out);

// Evaluates the full certificate suite on a trajectory CSV; prints one line
// per certificate and writes the report as a JSON array when json_path is
// nonempty. Returns 0 iff every non-asymptotic certificate passes.
int cmd_check(const std::string& csv_path, const Params& params, const ToleranceSet& tol,
              const std::string& json_path, std::ostream& out);

struct ConstantsInput {
    Params params;
    int n_dim = 3;
    double m = 1.0;
    double momentum_norm = 1.0;
    double E0 = 1.0;
    double G0 = 1.0;
    double F0 = 0.0;
    double Q0 = 4.0;
};

// Prints every inequality-chain constant with the formula used; a constant
// whose precondition fails reports its error without stopping the others.
// Returns 0 (the report itself is the product).
int cmd_constants(const ConstantsInput& in, const std::string& json_path, std::ostream& out);

// Quadrature convergence study of the scenario functionals against the box
// and whole-space closed forms. Returns 0 iff the study passes.
int cmd_oracle(const GaussianScenario& scenario, const std::vector<int>& levels,
               const std::string& json_path, std::ostream& out);

}  // namespace blowup
