#include "blowup/ops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "blowup/parallel.hpp"

namespace blowup {

namespace {

void check_size(const ScalarField& field, const Grid& grid, const char* what) {
    if (field.size() != grid.node_count) {
        throw std::invalid_argument(std::string(what) + ": field size does not match grid");
    }
}

void check_vector_size(const VectorField& vfield, const Grid& grid, const char* what) {
    if (vfield.size() != static_cast<std::size_t>(grid.n_dim)) {
        throw std::invalid_argument(std::string(what) + ": component count does not match grid dimension");
    }
    for (const auto& comp : vfield) check_size(comp, grid, what);
}

}  // namespace

double reduce_sum(const double* values, std::size_t count) {
    if (count <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += values[i];
        return s;
    }
    const std::size_t half = count / 2;
    return reduce_sum(values, half) + reduce_sum(values + half, count - half);
}

double reduce_sum(const ScalarField& values) { return reduce_sum(values.data(), values.size()); }

double integrate(const ScalarField& field, const Grid& grid) {
    check_size(field, grid, "integrate");
    return grid.quadrature_weight * reduce_sum(field);
}

void axis_derivative(const ScalarField& field, ScalarField& out, const Grid& grid, int axis,
                     StencilOrder order) {
    check_size(field, grid, "axis_derivative");
    if (axis < 0 || axis >= grid.n_dim) {
        throw std::invalid_argument("axis_derivative: axis out of range");
    }
    out.resize(grid.node_count);

    const std::size_t n_pts = static_cast<std::size_t>(grid.points_per_axis);
    const std::size_t stride = grid.strides[static_cast<std::size_t>(axis)];
    const std::size_t line_block = stride * n_pts;
    const std::size_t n_lines = grid.node_count / n_pts;
    const double* f = field.data();
    double* o = out.data();

    // Line base indices: base = block*line_block + offset, offset in [0, stride).
    auto run_lines = [&](std::size_t line_lo, std::size_t line_hi) {
        std::vector<double> buf(n_pts);
        for (std::size_t line = line_lo; line < line_hi; ++line) {
            const std::size_t block = line / stride;
            const std::size_t offset = line % stride;
            const std::size_t base = block * line_block + offset;
            for (std::size_t j = 0; j < n_pts; ++j) buf[j] = f[base + j * stride];
            if (order == StencilOrder::second) {
                const double c = 1.0 / (2.0 * grid.spacing);
                for (std::size_t j = 0; j < n_pts; ++j) {
                    const std::size_t jp = j + 1 == n_pts ? 0 : j + 1;
                    const std::size_t jm = j == 0 ? n_pts - 1 : j - 1;
                    o[base + j * stride] = c * (buf[jp] - buf[jm]);
                }
            } else {
                const double c = 1.0 / (12.0 * grid.spacing);
                for (std::size_t j = 0; j < n_pts; ++j) {
                    const std::size_t jp1 = j + 1 < n_pts ? j + 1 : j + 1 - n_pts;
                    const std::size_t jp2 = j + 2 < n_pts ? j + 2 : j + 2 - n_pts;
                    const std::size_t jm1 = j >= 1 ? j - 1 : j + n_pts - 1;
                    const std::size_t jm2 = j >= 2 ? j - 2 : j + n_pts - 2;
                    o[base + j * stride] =
                        c * (-buf[jp2] + 8.0 * buf[jp1] - 8.0 * buf[jm1] + buf[jm2]);
                }
            }
        }
    };
    parallel_for(0, n_lines, run_lines);
}

ScalarField axis_derivative(const ScalarField& field, const Grid& grid, int axis, StencilOrder order) {
    ScalarField out;
    axis_derivative(field, out, grid, axis, order);
    return out;
}

VectorField gradient(const ScalarField& field, const Grid& grid, StencilOrder order) {
    VectorField grad(static_cast<std::size_t>(grid.n_dim));
    for (int d = 0; d < grid.n_dim; ++d) {
        axis_derivative(field, grad[static_cast<std::size_t>(d)], grid, d, order);
    }
    return grad;
}

ScalarField divergence(const VectorField& vfield, const Grid& grid, StencilOrder order) {
    check_vector_size(vfield, grid, "divergence");
    ScalarField div(grid.node_count, 0.0);
    ScalarField scratch;
    for (int d = 0; d < grid.n_dim; ++d) {
        axis_derivative(vfield[static_cast<std::size_t>(d)], scratch, grid, d, order);
        for (std::size_t i = 0; i < grid.node_count; ++i) div[i] += scratch[i];
    }
    return div;
}

void curl(const VectorField& vfield, VectorField& out, const Grid& grid, StencilOrder order) {
    if (grid.n_dim != 3) throw std::invalid_argument("curl: requires n_dim == 3");
    check_vector_size(vfield, grid, "curl");
    if (&out == &vfield) throw std::invalid_argument("curl: out must not alias the input");
    if (out.size() != 3) out.assign(3, ScalarField(grid.node_count, 0.0));
    ScalarField a;
    ScalarField b;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        axis_derivative(vfield[static_cast<std::size_t>(k)], a, grid, j, order);
        axis_derivative(vfield[static_cast<std::size_t>(j)], b, grid, k, order);
        auto& ci = out[static_cast<std::size_t>(i)];
        ci.resize(grid.node_count);
        for (std::size_t p = 0; p < grid.node_count; ++p) ci[p] = a[p] - b[p];
    }
}

VectorField curl(const VectorField& vfield, const Grid& grid, StencilOrder order) {
    VectorField c;
    curl(vfield, c, grid, order);
    return c;
}

void cross(const VectorField& a, const VectorField& b, VectorField& out) {
    if (a.size() != 3 || b.size() != 3 || a[0].size() != b[0].size()) {
        throw std::invalid_argument("cross: requires matching 3-component fields");
    }
    if (&out == &a || &out == &b) throw std::invalid_argument("cross: out must not alias inputs");
    const std::size_t count = a[0].size();
    if (out.size() != 3) out.assign(3, ScalarField(count, 0.0));
    for (auto& comp : out) comp.resize(count);
    for (std::size_t p = 0; p < count; ++p) {
        out[0][p] = a[1][p] * b[2][p] - a[2][p] * b[1][p];
        out[1][p] = a[2][p] * b[0][p] - a[0][p] * b[2][p];
        out[2][p] = a[0][p] * b[1][p] - a[1][p] * b[0][p];
    }
}

VectorField cross(const VectorField& a, const VectorField& b, const Grid& grid) {
    if (grid.n_dim != 3) throw std::invalid_argument("cross: requires n_dim == 3");
    VectorField out;
    cross(a, b, out);
    return out;
}

ScalarField shift(const ScalarField& field, const Grid& grid, int axis, int steps) {
    check_size(field, grid, "shift");
    if (axis < 0 || axis >= grid.n_dim) throw std::invalid_argument("shift: axis out of range");
    const int n_pts = grid.points_per_axis;
    int s = steps % n_pts;
    if (s < 0) s += n_pts;
    ScalarField out(grid.node_count);
    const std::size_t stride = grid.strides[static_cast<std::size_t>(axis)];
    const std::size_t npts = static_cast<std::size_t>(n_pts);
    const std::size_t line_block = stride * npts;
    const std::size_t n_lines = grid.node_count / npts;
    for (std::size_t line = 0; line < n_lines; ++line) {
        const std::size_t base = (line / stride) * line_block + line % stride;
        for (std::size_t j = 0; j < npts; ++j) {
            const std::size_t js = (j + static_cast<std::size_t>(s)) % npts;
            out[base + j * stride] = field[base + js * stride];
        }
    }
    return out;
}

double second_difference_energy_fraction(const ScalarField& field, const Grid& grid) {
    check_size(field, grid, "second_difference_energy_fraction");
    const double mean = reduce_sum(field) / static_cast<double>(grid.node_count);
    ScalarField centered(grid.node_count);
    for (std::size_t i = 0; i < grid.node_count; ++i) centered[i] = field[i] - mean;

    ScalarField lap(grid.node_count, 0.0);
    const std::size_t npts = static_cast<std::size_t>(grid.points_per_axis);
    for (int d = 0; d < grid.n_dim; ++d) {
        const std::size_t stride = grid.strides[static_cast<std::size_t>(d)];
        const std::size_t line_block = stride * npts;
        const std::size_t n_lines = grid.node_count / npts;
        std::vector<double> buf(npts);
        for (std::size_t line = 0; line < n_lines; ++line) {
            const std::size_t base = (line / stride) * line_block + line % stride;
            for (std::size_t j = 0; j < npts; ++j) buf[j] = centered[base + j * stride];
            for (std::size_t j = 0; j < npts; ++j) {
                const std::size_t jp = j + 1 == npts ? 0 : j + 1;
                const std::size_t jm = j == 0 ? npts - 1 : j - 1;
                lap[base + j * stride] += buf[jp] - 2.0 * buf[j] + buf[jm];
            }
        }
    }
    ScalarField sq(grid.node_count);
    for (std::size_t i = 0; i < grid.node_count; ++i) sq[i] = lap[i] * lap[i];
    const double num = reduce_sum(sq);
    for (std::size_t i = 0; i < grid.node_count; ++i) sq[i] = centered[i] * centered[i];
    const double den = reduce_sum(sq);
    if (den <= 0.0) return 0.0;
    const double nn = static_cast<double>(grid.n_dim);
    return num / (16.0 * nn * nn * den);
}

bool in_boundary_band(const Grid& grid, std::size_t node, int band) {
    const std::size_t npts = static_cast<std::size_t>(grid.points_per_axis);
    for (int d = 0; d < grid.n_dim; ++d) {
        const std::size_t idx = (node / grid.strides[static_cast<std::size_t>(d)]) % npts;
        if (idx < static_cast<std::size_t>(band) || idx >= npts - static_cast<std::size_t>(band)) {
            return true;
        }
    }
    return false;
}

}  // namespace blowup
