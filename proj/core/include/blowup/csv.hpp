#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "blowup/functionals.hpp"

namespace blowup {

// Raised when an input file does not match the expected schema; the CLI maps
// this to its input-error exit code.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Column order: t,m,P1..Pn,E_k,E_m,E_i,E_total,G,F,Q,grad_u_sq,curl_H_sq,
// u_L6,rho_L65,rho_Lgamma,div_H_sq,dissipation,boundary_mass
std::string csv_header(int n_dim);
std::string csv_row(const EnergyBreakdown& b);
std::string trajectory_to_csv(const std::vector<EnergyBreakdown>& samples, int n_dim);

// Parses a functionals CSV; infers n_dim from the P columns. Throws
// SchemaError on header mismatch, malformed rows, or non-finite entries.
std::vector<EnergyBreakdown> parse_trajectory_csv(const std::string& content);
std::vector<EnergyBreakdown> read_trajectory_csv(const std::string& path);

}  // namespace blowup
