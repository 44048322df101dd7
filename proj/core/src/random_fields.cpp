#include "blowup/random_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace blowup {

namespace {

struct Wave {
    std::vector<int> k;       // integer wave number per axis
    std::vector<double> phi;  // phase per axis
    double amplitude = 0.0;
};

std::vector<Wave> draw_waves(std::uint64_t seed, std::uint64_t stream, int n_dim,
                             int max_mode, int n_waves) {
    if (max_mode < 0 || n_waves < 1)
        throw std::invalid_argument("wave mix: max_mode >= 0 and n_waves >= 1 required");
    std::seed_seq sq{static_cast<std::uint64_t>(0x77617665u), seed, stream};
    std::mt19937_64 rng(sq);
    std::uniform_int_distribution<int> mode(0, max_mode);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

    std::vector<Wave> waves(static_cast<std::size_t>(n_waves));
    for (Wave& w : waves) {
        w.k.resize(static_cast<std::size_t>(n_dim));
        w.phi.resize(static_cast<std::size_t>(n_dim));
        for (int d = 0; d < n_dim; ++d) {
            w.k[static_cast<std::size_t>(d)] = mode(rng);
            w.phi[static_cast<std::size_t>(d)] = phase(rng);
        }
        w.amplitude = amp(rng) / n_waves;
    }
    return waves;
}

ScalarField sample_waves(const Grid& grid, const std::vector<Wave>& waves) {
    const int n = grid.n_dim;
    const int N = grid.points_per_axis;
    const double freq = M_PI / grid.half_extent;

    // Per-axis tables: table[w][d][i] = cos(k pi x_i / L + phi).
    std::vector<double> table(waves.size() * static_cast<std::size_t>(n * N));
    for (std::size_t w = 0; w < waves.size(); ++w) {
        for (int d = 0; d < n; ++d) {
            double* row = table.data() + (w * static_cast<std::size_t>(n) +
                                          static_cast<std::size_t>(d)) * N;
            const double kf = waves[w].k[static_cast<std::size_t>(d)] * freq;
            const double phi = waves[w].phi[static_cast<std::size_t>(d)];
            for (int i = 0; i < N; ++i) row[i] = std::cos(kf * grid.coordinates[i] + phi);
        }
    }

    ScalarField out(grid.node_count, 0.0);
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (std::size_t node = 0; node < grid.node_count; ++node) {
        grid.unflatten(node, idx.data());
        double sum = 0.0;
        for (std::size_t w = 0; w < waves.size(); ++w) {
            double prod = waves[w].amplitude;
            const double* base = table.data() + w * static_cast<std::size_t>(n) * N;
            for (int d = 0; d < n; ++d) prod *= base[d * N + idx[static_cast<std::size_t>(d)]];
            sum += prod;
        }
        out[node] = sum;
    }
    return out;
}

void apply_envelope(ScalarField& f, const Grid& grid, double width) {
    if (!(width > 0.0)) return;
    const int n = grid.n_dim;
    const double inv2w2 = 1.0 / (2.0 * width * width);
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (std::size_t node = 0; node < grid.node_count; ++node) {
        grid.unflatten(node, idx.data());
        double r2 = 0.0;
        for (int d = 0; d < n; ++d) {
            const double x = grid.coordinates[idx[static_cast<std::size_t>(d)]];
            r2 += x * x;
        }
        f[node] *= std::exp(-r2 * inv2w2);
    }
}

ScalarField mix_stream(const Grid& grid, std::uint64_t seed, std::uint64_t stream,
                       int max_mode, int n_waves, double envelope_width) {
    ScalarField f = sample_waves(grid, draw_waves(seed, stream, grid.n_dim, max_mode, n_waves));
    apply_envelope(f, grid, envelope_width);
    return f;
}

}  // namespace

ScalarField sample_wave_mix(const Grid& grid, std::uint64_t seed, int max_mode, int n_waves,
                            double envelope_width) {
    return mix_stream(grid, seed, 0, max_mode, n_waves, envelope_width);
}

ScalarField sample_nonnegative_mix(const Grid& grid, std::uint64_t seed, int max_mode,
                                   int n_waves, double envelope_width) {
    ScalarField f = sample_waves(grid, draw_waves(seed, 0, grid.n_dim, max_mode, n_waves));
    for (double& v : f) v *= v;
    apply_envelope(f, grid, envelope_width);
    return f;
}

VectorField sample_vector_mix(const Grid& grid, std::uint64_t seed, int components,
                              int max_mode, int n_waves, double envelope_width) {
    if (components < 1) throw std::invalid_argument("vector mix: components >= 1");
    VectorField v;
    v.reserve(static_cast<std::size_t>(components));
    for (int c = 0; c < components; ++c)
        v.push_back(mix_stream(grid, seed, 1 + static_cast<std::uint64_t>(c), max_mode,
                               n_waves, envelope_width));
    return v;
}

State random_state(const Grid& grid, const Params& params, std::uint64_t seed,
                   StencilOrder order, bool with_H, double rho_background) {
    if (rho_background < 0.0)
        throw std::invalid_argument("random_state: rho_background must be >= 0");
    params.validate(grid.n_dim);

    const double width = grid.half_extent / 5.0;
    State st = make_state(grid, params);
    st.rho = sample_nonnegative_mix(grid, seed, 3, 12, width);
    if (rho_background > 0.0)
        for (double& v : st.rho) v += rho_background;
    st.u = sample_vector_mix(grid, seed, grid.n_dim, 3, 12, width);
    if (with_H) {
        if (grid.n_dim != 3)
            throw std::invalid_argument("random_state: H requires n_dim == 3");
        VectorField potential;
        for (int c = 0; c < 3; ++c)
            potential.push_back(mix_stream(grid, seed, 101 + static_cast<std::uint64_t>(c),
                                           3, 12, width));
        st.H = curl(potential, grid, order);
    }
    return st;
}

}  // namespace blowup
