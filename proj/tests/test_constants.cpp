#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "blowup/constants.hpp"
#include "blowup/quadrature.hpp"
#include "testutil.hpp"

using namespace blowup;

TEST_CASE("sharp embedding constant is pinned and matches radial quadrature") {
    const double k2 = constant_K2(3);
    CHECK(k2 == doctest::Approx(0.18255157148718101).epsilon(1e-14));

    // Independent oracle: integrate the extremal profile (1+r^2)^{-1/2} over
    // the whole line, mapping the tails through r -> 1/t.
    const auto grad_density = [](double r) {
        const double w = 1.0 + r * r;
        return 4.0 * M_PI * r * r * r * r / (w * w * w);
    };
    const auto sixth_density = [](double r) {
        const double w = 1.0 + r * r;
        return 4.0 * M_PI * r * r / (w * w * w);
    };
    const auto grad_tail = [](double t) {
        const double w = 1.0 + t * t;
        return 4.0 * M_PI / (w * w * w);
    };
    const auto sixth_tail = [](double t) {
        const double w = 1.0 + t * t;
        return 4.0 * M_PI * t * t / (w * w * w);
    };
    const double R = 10.0, tol = 1e-13;
    const double igrad = adaptive_simpson(grad_density, 0.0, R, tol) +
                         adaptive_simpson(grad_tail, 0.0, 1.0 / R, tol);
    const double i6 = adaptive_simpson(sixth_density, 0.0, R, tol) +
                      adaptive_simpson(sixth_tail, 0.0, 1.0 / R, tol);
    CHECK(testutil::rel_gap(igrad, 0.75 * M_PI * M_PI) < 1e-10);
    CHECK(testutil::rel_gap(k2, std::cbrt(i6) / igrad) < 1e-10);
}

TEST_CASE("cutoff extremal family climbs monotonically to the sharp constant") {
    const double k2 = constant_K2(3);
    double prev = 0.0;
    for (double radius : {32.0, 64.0, 128.0, 256.0}) {
        const double q = sobolev_extremal_quotient(radius);
        CHECK(q > prev);
        CHECK(q < k2);
        prev = q;
    }
    CHECK(prev >= 0.95 * k2);
    CHECK_THROWS_AS(sobolev_extremal_quotient(0.0), std::invalid_argument);
}

TEST_CASE("two-term interpolation constant is pinned and reproducible") {
    CHECK(constant_Cgn(2.0, 3) == doctest::Approx(1.9796263300525183).epsilon(1e-14));

    for (double gamma : {1.2, 1.4, 2.0, 3.0, 4.0}) {
        const double b = 2.0 * gamma / (3.0 * (gamma - 1.0));
        const double D = 5.0 * gamma - 3.0;
        const double want = std::pow(b, 3.0 * (gamma - 1.0) / D) + std::pow(b, -2.0 * gamma / D);
        CHECK(testutil::rel_gap(constant_Cgn(gamma, 3), want) < 1e-14);
        CHECK(constant_Cgn(gamma, 3) > 1.0);
    }
    CHECK_THROWS_AS(constant_Cgn(1.0, 3), std::invalid_argument);
}

TEST_CASE("duality constant normalizes to one and guards its domain") {
    CHECK(constant_K1(1.0, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937 rng(404);
    std::uniform_real_distribution<double> mass_draw(0.2, 8.0), a_draw(0.3, 4.0),
        gamma_draw(1.3, 3.0);
    for (int i = 0; i < 5; ++i) {
        const double m = mass_draw(rng), A = a_draw(rng), gamma = gamma_draw(rng);
        const double want =
            std::pow(m, 5.0 / 6.0) * std::pow((gamma - 1.0) / (m * A), 1.0 / (6.0 * (gamma - 1.0)));
        CHECK(testutil::rel_gap(constant_K1(m, A, gamma), want) < 1e-14);
    }

    CHECK_NOTHROW(constant_K1(1.0, 1.0, 1.2));
    CHECK_THROWS_AS(constant_K1(1.0, 1.0, 1.19), std::invalid_argument);
    CHECK_THROWS_AS(constant_K1(1.0, 1.0, 2.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(constant_K1(0.0, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(constant_K1(1.0, -1.0, 2.0), std::invalid_argument);
}

TEST_CASE("combined momentum constant") {
    const double k1 = constant_K1(2.0, 1.0, 2.0);
    const double k2 = constant_K2(3);
    const double p = 0.7;
    CHECK(testutil::rel_gap(constant_K(p, k1, k2), p * p / (k1 * k1 * k2)) < 1e-14);
    CHECK_THROWS_AS(constant_K(0.0, k1, k2), std::invalid_argument);
}

TEST_CASE("dissipation coefficient reduces to mu on the admissible domain") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> mu_draw(0.05, 2.0), shift_draw(0.01, 1.0);
    for (int n : {2, 3, 4}) {
        for (int i = 0; i < 10; ++i) {
            const double mu = mu_draw(rng);
            const double lambda = shift_draw(rng) - 2.0 * mu / n;
            if (!(lambda + 2.0 * mu / n > 0.0)) continue;
            CHECK(constant_sigma(mu, lambda, n) == mu);
        }
    }
    // Formula level, outside the admissible domain the other branch can win.
    CHECK(constant_sigma(1.0, -1.4, 3) == doctest::Approx(-0.2).epsilon(1e-13));
}

TEST_CASE("exponent bookkeeping across the gamma range") {
    CHECK(gradient_bound_exponent(2.0, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(gradient_bound_exponent(1.4, 3) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(q_log_slope(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q_log_slope(1.2) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(g_upper_coefficient(2.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(g_upper_coefficient(1.2) == doctest::Approx(1.0).epsilon(1e-15));

    for (double gamma : {1.1, 1.25, 4.0 / 3.0, 1.5, 2.0, 3.0}) {
        CHECK(testutil::rel_gap(eiem_upper_exponent(gamma), 1.0 - q_log_slope(gamma)) < 1e-14);
    }
}

TEST_CASE("lower and upper bound constants recompute from their parts") {
    const double m = 3.1, A = 0.8, gamma = 1.6;
    const double D = 5.0 * gamma - 3.0;
    const double want_c1 = A / (gamma - 1.0) * std::pow(m / constant_Cgn(gamma, 3), 0.5 * D) *
                           std::pow(2.0, -1.5 * (gamma - 1.0));
    CHECK(testutil::rel_gap(constant_C1(A, gamma, 3, m), want_c1) < 1e-13);

    const double q0 = 5.0, g0 = 2.2;
    CHECK(testutil::rel_gap(constant_C2(gamma, q0, g0),
                            0.25 * q0 * std::pow(g0, -q_log_slope(gamma))) < 1e-14);
}

TEST_CASE("ode lifespan oracle undercuts the closed-form bound") {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> e_draw(0.1, 10.0), s_draw(0.01, 2.0), k_draw(0.1, 5.0),
        gamma_draw(1.1, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double E0 = e_draw(rng), sigma = s_draw(rng), K = k_draw(rng);
        const double gamma = gamma_draw(rng);
        const double beta = gradient_bound_exponent(gamma, 3);
        const double t_star = lifespan_bound(E0, sigma, K, gamma, 3);
        const double t_ode = lifespan_ode_oracle(E0, sigma, K, gamma, 3);
        CHECK(testutil::rel_gap(t_star, std::pow(E0, 1.0 + beta) / (sigma * K)) < 1e-14);
        CHECK(t_ode <= t_star * (1.0 + 1e-12));
        CHECK(std::fabs(t_ode - t_star / (1.0 + beta)) <= 1e-6 * t_star);
    }
}

TEST_CASE("lifespan bound is monotone in momentum, dissipation, and energy") {
    const double k1 = constant_K1(2.0, 1.0, 2.0);
    const double k2 = constant_K2(3);

    double prev = 1e300;
    for (double p : {0.2, 0.4, 0.8, 1.6, 3.2}) {
        const double t = lifespan_bound(1.0, 0.5, constant_K(p, k1, k2), 2.0, 3);
        CHECK(t < prev);
        prev = t;
    }
    prev = 1e300;
    for (double sigma : {0.1, 0.2, 0.4, 0.8, 1.6}) {
        const double t = lifespan_bound(1.0, sigma, 1.0, 2.0, 3);
        CHECK(t < prev);
        prev = t;
    }
    prev = 0.0;
    for (double e0 : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double t = lifespan_bound(e0, 0.5, 1.0, 2.0, 3);
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("decay envelope pieces satisfy their defining relations") {
    const double gamma = 2.0;
    const double beta = gradient_bound_exponent(gamma, 3);
    CHECK(testutil::rel_gap(envelope_exponent(gamma, 3), 2.0 * eiem_upper_exponent(gamma) * beta) <
          1e-14);

    const double sigma = 0.3, K = 1.7, C2 = 2.5, p_norm = 0.9, m = 4.0;
    const double e = envelope_exponent(gamma, 3);
    const double L = envelope_constant(sigma, K, C2, gamma, 3, p_norm, m);
    const double want = sigma * K * std::pow(C2, -beta) *
                        std::pow(p_norm * p_norm / (2.0 * m), eiem_upper_exponent(gamma) * beta);
    CHECK(testutil::rel_gap(L, want) < 1e-13);

    const double E0 = 1.8;
    const double T = envelope_extinction_time(E0, L, e);
    CHECK(testutil::rel_gap(E0, L * std::pow(T, e + 1.0) / (e + 1.0)) < 1e-12);
}
