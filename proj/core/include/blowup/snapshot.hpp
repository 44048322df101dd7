#pragma once

#include <string>

#include "blowup/state.hpp"

namespace blowup {

// Binary state snapshot, little-endian:
//   magic "MHDS", format version u32 (= 1), n_dim u32, N u32, L f64,
//   params A, gamma, mu, lambda, nu (5 x f64), time f64,
//   then rho, u components, H components as f64 arrays in row-major node order.
// Round-trips bit-exactly.
void write_snapshot(const State& state, const std::string& path);
State read_snapshot(const std::string& path);

}  // namespace blowup
