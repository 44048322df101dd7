#include "blowup/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace blowup {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; this platform is not");
static_assert(sizeof(double) == 8, "snapshot format requires 64-bit doubles");

constexpr char kMagic[4] = {'M', 'H', 'D', 'S'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_array(std::ofstream& out, const ScalarField& f) {
    out.write(reinterpret_cast<const char*>(f.data()),
              static_cast<std::streamsize>(f.size() * sizeof(double)));
}

std::uint32_t read_u32(std::ifstream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double read_f64(std::ifstream& in) {
    double v = 0.0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

void read_array(std::ifstream& in, ScalarField& f) {
    in.read(reinterpret_cast<char*>(f.data()), static_cast<std::streamsize>(f.size() * sizeof(double)));
}

}  // namespace

void write_snapshot(const State& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    out.write(kMagic, 4);
    write_u32(out, kVersion);
    write_u32(out, static_cast<std::uint32_t>(state.grid.n_dim));
    write_u32(out, static_cast<std::uint32_t>(state.grid.points_per_axis));
    write_f64(out, state.grid.half_extent);
    write_f64(out, state.params.A);
    write_f64(out, state.params.gamma);
    write_f64(out, state.params.mu);
    write_f64(out, state.params.lambda);
    write_f64(out, state.params.nu);
    write_f64(out, state.time);
    write_array(out, state.rho);
    for (const auto& comp : state.u) write_array(out, comp);
    for (const auto& comp : state.H) write_array(out, comp);
    if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

State read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("read_snapshot: bad magic in " + path);
    }
    const std::uint32_t version = read_u32(in);
    if (version != kVersion) {
        throw std::runtime_error("read_snapshot: unsupported format version in " + path);
    }
    const std::uint32_t n_dim = read_u32(in);
    const std::uint32_t n_pts = read_u32(in);
    const double half_extent = read_f64(in);
    if (!in) throw std::runtime_error("read_snapshot: truncated header in " + path);

    Params params;
    params.A = read_f64(in);
    params.gamma = read_f64(in);
    params.mu = read_f64(in);
    params.lambda = read_f64(in);
    params.nu = read_f64(in);
    const double time = read_f64(in);

    State s = make_state(make_grid(static_cast<int>(n_dim), half_extent, static_cast<int>(n_pts)), params);
    s.time = time;
    read_array(in, s.rho);
    for (auto& comp : s.u) read_array(in, comp);
    for (auto& comp : s.H) read_array(in, comp);
    if (!in) throw std::runtime_error("read_snapshot: truncated field data in " + path);
    return s;
}

}  // namespace blowup
