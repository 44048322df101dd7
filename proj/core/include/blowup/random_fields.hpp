#pragma once

#include <cstdint>

#include "blowup/ops.hpp"
#include "blowup/state.hpp"

namespace blowup {

// Deterministic samplers for property tests. A wave mix is a sum of separable
// cosine modes with integer wave numbers up to max_mode on the 2L-periodic
// box, so it is smooth and band-limited. Wave parameters are drawn from the
// seed before any grid is touched: the same seed describes the same analytic
// function on every grid over the same box, which is what refinement studies
// need.

ScalarField sample_wave_mix(const Grid& grid, std::uint64_t seed, int max_mode = 3,
                            int n_waves = 12, double envelope_width = 0.0);

// Square of a wave mix under the envelope: nonnegative, smooth, localized.
ScalarField sample_nonnegative_mix(const Grid& grid, std::uint64_t seed, int max_mode = 3,
                                   int n_waves = 12, double envelope_width = 0.0);

// Independent wave mix per component (distinct streams off the seed).
VectorField sample_vector_mix(const Grid& grid, std::uint64_t seed, int components,
                              int max_mode = 3, int n_waves = 12,
                              double envelope_width = 0.0);

// Localized random state: nonnegative rho plus an optional uniform
// background, envelope-localized u, and (optionally, n = 3 only) H taken as
// the discrete curl of a random vector potential so div H = 0 holds exactly
// for the given stencil. Envelope width is half_extent / 5 so the fields die
// off well before the box faces.
State random_state(const Grid& grid, const Params& params, std::uint64_t seed,
                   StencilOrder order, bool with_H = false, double rho_background = 0.0);

}  // namespace blowup
