#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "blowup/convergence.hpp"
#include "blowup/field.hpp"
#include "blowup/grid.hpp"
#include "blowup/ops.hpp"
#include "blowup/random_fields.hpp"
#include "testutil.hpp"

using namespace blowup;

namespace {

ScalarField axis_wave(const Grid& g, int axis, int mode, bool use_sin) {
    const double omega = mode * M_PI / g.half_extent;
    ScalarField f(g.node_count);
    int idx[4];
    for (std::size_t q = 0; q < g.node_count; ++q) {
        g.unflatten(q, idx);
        const double x = g.coordinates[static_cast<std::size_t>(idx[axis])];
        f[q] = use_sin ? std::sin(omega * x) : std::cos(omega * x);
    }
    return f;
}

}  // namespace

TEST_CASE("cell-centered grid geometry") {
    const Grid g = make_grid(3, 6.0, 24);
    CHECK(g.spacing == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.node_count == 24u * 24u * 24u);
    CHECK(g.strides[0] == 576u);
    CHECK(g.strides[1] == 24u);
    CHECK(g.strides[2] == 1u);
    CHECK(g.quadrature_weight == doctest::Approx(0.125).epsilon(1e-15));

    // Mirror symmetry must be bitwise so reflected states stay exactly symmetric.
    for (int i = 0; i < 24; ++i) {
        CHECK(g.coordinates[static_cast<std::size_t>(23 - i)] ==
              -g.coordinates[static_cast<std::size_t>(i)]);
    }

    int idx[4];
    for (std::size_t q : {std::size_t{0}, std::size_t{577}, g.node_count - 1}) {
        g.unflatten(q, idx);
        std::size_t back = 0;
        for (int d = 0; d < 3; ++d) back += static_cast<std::size_t>(idx[d]) * g.strides[static_cast<std::size_t>(d)];
        CHECK(back == q);
    }
}

TEST_CASE("grid construction rejects bad arguments") {
    CHECK_THROWS_AS(make_grid(3, 6.0, 23), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(3, 6.0, 6), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(3, 0.0, 24), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(3, -1.0, 24), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 6.0, 24), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(5, 6.0, 24), std::invalid_argument);
    CHECK_NOTHROW(make_grid(2, 1.0, 8));
    CHECK_NOTHROW(make_grid(4, 2.0, 8));
}

TEST_CASE("integrating ones gives the box volume") {
    for (int n : {2, 3, 4}) {
        const Grid g = make_grid(n, 1.5, 10);
        const ScalarField ones(g.node_count, 1.0);
        const double vol = std::pow(3.0, n);
        CHECK(testutil::rel_gap(integrate(ones, g), vol) < 1e-14);
    }
}

TEST_CASE("derivative of a constant field vanishes to roundoff") {
    const Grid g = make_grid(3, 2.0, 12);
    const ScalarField c(g.node_count, 3.7);
    for (auto order : {StencilOrder::second, StencilOrder::fourth}) {
        for (int axis = 0; axis < 3; ++axis) {
            CHECK(testutil::max_abs(axis_derivative(c, g, axis, order)) <= 1e-14);
        }
    }
}

TEST_CASE("axis derivative converges at the stencil order") {
    const std::vector<int> levels = {16, 24, 32};
    for (auto order : {StencilOrder::second, StencilOrder::fourth}) {
        for (int axis = 0; axis < 3; ++axis) {
            std::vector<double> spacings, errors;
            for (int n_pts : levels) {
                const Grid g = make_grid(3, 3.0, n_pts);
                const double omega = M_PI / g.half_extent;
                const ScalarField f = axis_wave(g, axis, 1, true);
                const ScalarField exact = axis_wave(g, axis, 1, false);
                const ScalarField df = axis_derivative(f, g, axis, order);
                double err = 0.0;
                for (std::size_t q = 0; q < g.node_count; ++q) {
                    err = std::max(err, std::fabs(df[q] - omega * exact[q]));
                }
                spacings.push_back(g.spacing);
                errors.push_back(err);
            }
            const double expected = order == StencilOrder::second ? 2.0 : 4.0;
            CHECK(fit_order(spacings, errors) == doctest::Approx(expected).epsilon(0.05));
        }
    }
}

TEST_CASE("axis derivative is skew-adjoint under the quadrature inner product") {
    const Grid g = make_grid(3, 2.0, 16);
    const ScalarField f = sample_wave_mix(g, 7);
    const ScalarField h = sample_wave_mix(g, 8);
    ScalarField prod(g.node_count);
    for (auto order : {StencilOrder::second, StencilOrder::fourth}) {
        for (int axis = 0; axis < 3; ++axis) {
            const ScalarField df = axis_derivative(f, g, axis, order);
            const ScalarField dh = axis_derivative(h, g, axis, order);
            for (std::size_t q = 0; q < g.node_count; ++q) prod[q] = df[q] * h[q];
            const double a = integrate(prod, g);
            for (std::size_t q = 0; q < g.node_count; ++q) prod[q] = f[q] * dh[q];
            const double b = integrate(prod, g);
            const double scale = std::max(std::fabs(a), std::fabs(b));
            CHECK(std::fabs(a + b) <= 1e-13 * scale);
        }
    }
}

TEST_CASE("div curl and curl grad vanish to roundoff") {
    const Grid g = make_grid(3, 2.0, 16);
    for (auto order : {StencilOrder::second, StencilOrder::fourth}) {
        const VectorField v = sample_vector_mix(g, 21, 3);
        const VectorField w = curl(v, g, order);
        double scale = 0.0;
        for (const auto& c : w) scale = std::max(scale, testutil::max_abs(c));
        CHECK(testutil::max_abs(divergence(w, g, order)) <= 1e-13 * scale);

        const ScalarField f = sample_wave_mix(g, 22);
        const VectorField grad_f = gradient(f, g, order);
        double gscale = 0.0;
        for (const auto& c : grad_f) gscale = std::max(gscale, testutil::max_abs(c));
        for (const auto& c : curl(grad_f, g, order)) {
            CHECK(testutil::max_abs(c) <= 1e-13 * gscale);
        }
    }
}

TEST_CASE("curl and cross require three dimensions") {
    const Grid g2 = make_grid(2, 2.0, 8);
    const VectorField v2 = zeros_vector(g2);
    CHECK_THROWS_AS(curl(v2, g2, StencilOrder::fourth), std::invalid_argument);
    CHECK_THROWS_AS(cross(v2, v2, g2), std::invalid_argument);
}

TEST_CASE("cross product matches the component formula") {
    const Grid g = make_grid(3, 2.0, 8);
    VectorField a = zeros_vector(g), b = zeros_vector(g);
    for (std::size_t q = 0; q < g.node_count; ++q) {
        a[0][q] = 1.0 + 0.1 * q;
        a[1][q] = 2.0;
        a[2][q] = -0.5;
        b[0][q] = 0.3;
        b[1][q] = -1.0;
        b[2][q] = 0.25 * (q % 7);
    }
    const VectorField c = cross(a, b, g);
    for (std::size_t q = 0; q < g.node_count; ++q) {
        CHECK(c[0][q] == doctest::Approx(a[1][q] * b[2][q] - a[2][q] * b[1][q]).epsilon(1e-14));
        CHECK(c[1][q] == doctest::Approx(a[2][q] * b[0][q] - a[0][q] * b[2][q]).epsilon(1e-14));
        CHECK(c[2][q] == doctest::Approx(a[0][q] * b[1][q] - a[1][q] * b[0][q]).epsilon(1e-14));
    }
}

TEST_CASE("shift wraps periodically and composes to the identity") {
    const Grid g = make_grid(3, 2.0, 8);
    const ScalarField f = sample_wave_mix(g, 31);
    for (int axis = 0; axis < 3; ++axis) {
        CHECK(shift(f, g, axis, 8) == f);
        CHECK(shift(shift(f, g, axis, 3), g, axis, -3) == f);
    }

    // shift(., +1) samples the neighbor at the next index along the axis.
    ScalarField delta = zeros(g);
    const std::size_t center = 3 * g.strides[0] + 4 * g.strides[1] + 5;
    delta[center] = 1.0;
    const ScalarField moved = shift(delta, g, 0, 1);
    CHECK(moved[2 * g.strides[0] + 4 * g.strides[1] + 5] == 1.0);
    CHECK_THROWS_AS(shift(f, g, 3, 1), std::invalid_argument);
}

TEST_CASE("second difference energy fraction spans constant to Nyquist") {
    const Grid g = make_grid(3, 2.0, 16);
    int idx[4];

    const ScalarField c(g.node_count, 2.0);
    CHECK(second_difference_energy_fraction(c, g) == 0.0);

    // Full checkerboard saturates the proxy; a single Nyquist axis contributes
    // 1/n_dim of the composite second difference, hence 1/9 of the energy in 3D.
    ScalarField checker(g.node_count), axis0(g.node_count);
    for (std::size_t q = 0; q < g.node_count; ++q) {
        g.unflatten(q, idx);
        checker[q] = ((idx[0] + idx[1] + idx[2]) % 2 == 0) ? 1.0 : -1.0;
        axis0[q] = (idx[0] % 2 == 0) ? 1.0 : -1.0;
    }
    CHECK(second_difference_energy_fraction(checker, g) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(second_difference_energy_fraction(axis0, g) == doctest::Approx(1.0 / 9.0).epsilon(1e-13));

    const ScalarField smooth = axis_wave(g, 0, 1, true);
    const double frac = second_difference_energy_fraction(smooth, g);
    CHECK(frac > 0.0);
    CHECK(frac < 0.01);

    const ScalarField mix = sample_wave_mix(g, 41);
    const double fm = second_difference_energy_fraction(mix, g);
    CHECK(fm >= 0.0);
    CHECK(fm <= 1.0);
}

TEST_CASE("boundary band membership counts match the closed form") {
    const Grid g = make_grid(3, 2.0, 12);
    for (int band : {1, 2}) {
        std::size_t count = 0;
        for (std::size_t q = 0; q < g.node_count; ++q) {
            if (in_boundary_band(g, q, band)) ++count;
        }
        const std::size_t interior = static_cast<std::size_t>(std::pow(12 - 2 * band, 3) + 0.5);
        CHECK(count == g.node_count - interior);
    }
    CHECK_FALSE(in_boundary_band(g, 6 * g.strides[0] + 6 * g.strides[1] + 6, 2));
}

TEST_CASE("reduce_sum is deterministic and accurate") {
    const Grid g = make_grid(3, 2.0, 16);
    const ScalarField f = sample_wave_mix(g, 55);
    const double s1 = reduce_sum(f);
    const double s2 = reduce_sum(f);
    CHECK(s1 == s2);

    long double acc = 0.0L, abs_acc = 0.0L;
    for (double x : f) {
        acc += static_cast<long double>(x);
        abs_acc += std::fabs(static_cast<long double>(x));
    }
    // The mix has near-zero mean, so compare against the absolute-value scale.
    CHECK(std::fabs(s1 - static_cast<double>(acc)) <= 1e-14 * static_cast<double>(abs_acc));
}
