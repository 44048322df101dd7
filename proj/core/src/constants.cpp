#include "blowup/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "blowup/quadrature.hpp"

namespace blowup {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

}  // namespace

double constant_K1(double m, double A, double gamma, int n) {
    require(n >= 3, "constant_K1: n must be >= 3");
    require(m > 0.0, "constant_K1: m must be > 0");
    require(A > 0.0, "constant_K1: A must be > 0");
    const double gamma_min = 2.0 * n / (n + 2.0);
    require(gamma >= gamma_min, "constant_K1: gamma below interpolation threshold 2n/(n+2)");
    const double e1 = (n + 2.0) / (2.0 * n);
    const double e2 = (n - 2.0) / (2.0 * n * (gamma - 1.0));
    return std::pow(m, e1) * std::pow((gamma - 1.0) / (m * A), e2);
}

double constant_K2(int n) {
    require(n >= 3, "constant_K2: n must be >= 3");
    const double nn = n;
    const double sphere = 2.0 * std::pow(M_PI, nn / 2.0) / std::tgamma(nn / 2.0);
    const double i6 = 0.5 * sphere * std::exp(log_beta(nn / 2.0, nn / 2.0));
    const double igrad =
        0.5 * (nn - 2.0) * (nn - 2.0) * sphere * std::exp(log_beta((nn + 2.0) / 2.0, (nn - 2.0) / 2.0));
    const double sharp = igrad / std::pow(i6, (nn - 2.0) / nn);
    return 1.0 / sharp;
}

double sobolev_extremal_quotient(double cutoff_radius) {
    require(cutoff_radius > 0.0 && std::isfinite(cutoff_radius),
            "sobolev_extremal_quotient: cutoff_radius must be positive and finite");
    const double R = cutoff_radius;
    const auto ramp = [R](double r) { return r <= 0.5 * R ? 1.0 : (R - r) * 2.0 / R; };
    const auto ramp_slope = [R](double r) { return r <= 0.5 * R ? 0.0 : -2.0 / R; };
    const auto grad_density = [&](double r) {
        const double u = 1.0 / std::sqrt(1.0 + r * r);
        const double du = -r * u * u * u;
        const double g = ramp(r) * du + ramp_slope(r) * u;
        return 4.0 * M_PI * r * r * g * g;
    };
    const auto sixth_density = [&](double r) {
        const double u = ramp(r) / std::sqrt(1.0 + r * r);
        return 4.0 * M_PI * r * r * std::pow(u, 6);
    };
    // Split at the ramp knee so each panel stays smooth.
    const double tol = 1e-12;
    const double igrad = adaptive_simpson(grad_density, 0.0, 0.5 * R, tol) +
                         adaptive_simpson(grad_density, 0.5 * R, R, tol);
    const double i6 = adaptive_simpson(sixth_density, 0.0, 0.5 * R, tol) +
                      adaptive_simpson(sixth_density, 0.5 * R, R, tol);
    return std::cbrt(i6) / igrad;
}

double constant_Cgn(double gamma, int n) {
    require(gamma > 1.0, "constant_Cgn: gamma must be > 1");
    require(n >= 3, "constant_Cgn: n must be >= 3");
    const double b = 2.0 * gamma / (n * (gamma - 1.0));
    const double D = (n + 2.0) * gamma - n;
    return std::pow(b, n * (gamma - 1.0) / D) + std::pow(b, -2.0 * gamma / D);
}

double constant_C1(double A, double gamma, int n, double m) {
    require(A > 0.0, "constant_C1: A must be > 0");
    require(gamma > 1.0, "constant_C1: gamma must be > 1");
    require(m > 0.0, "constant_C1: m must be > 0");
    const double D = (n + 2.0) * gamma - n;
    const double cgn = constant_Cgn(gamma, n);
    return A / (gamma - 1.0) * std::pow(m / cgn, D / 2.0) * std::pow(2.0, -n * (gamma - 1.0) / 2.0);
}

double q_log_slope(double gamma, int n) {
    require(gamma > 1.0, "q_log_slope: gamma must be > 1");
    const double two_branch = 2.0 - n * (gamma - 1.0);
    return 0.5 * (two_branch > 1.0 ? two_branch : 1.0);
}

double eiem_upper_exponent(double gamma, int n) {
    const double k = n * (gamma - 1.0);
    return 0.5 * (k < 1.0 ? k : 1.0);
}

double g_upper_coefficient(double gamma, int n) {
    const double c = n * (gamma - 1.0) / 2.0;
    return c > 1.0 ? c : 1.0;
}

double constant_C2(double gamma, double Q0, double G0, int n) {
    require(Q0 > 0.0, "constant_C2: Q0 must be > 0");
    require(G0 > 0.0, "constant_C2: G0 must be > 0");
    return 0.25 * Q0 * std::pow(G0, -q_log_slope(gamma, n));
}

double constant_K(double momentum_norm, double K1, double K2) {
    require(momentum_norm != 0.0, "constant_K: requires momentum != 0");
    require(K1 > 0.0 && K2 > 0.0, "constant_K: K1, K2 must be > 0");
    return momentum_norm * momentum_norm / (K1 * K1 * K2);
}

double constant_sigma(double mu, double lambda, int n) {
    require(mu > 0.0, "constant_sigma: mu must be > 0");
    const double alt = (n + 1.0) * mu + n * lambda;
    return mu < alt ? mu : alt;
}

double gradient_bound_exponent(double gamma, int n) {
    require(n >= 3, "gradient_bound_exponent: n must be >= 3");
    require(gamma > 1.0, "gradient_bound_exponent: gamma must be > 1");
    return (n - 2.0) / (n * (gamma - 1.0));
}

double lifespan_bound(double E0, double sigma, double K, double gamma, int n) {
    require(E0 > 0.0, "lifespan_bound: E0 must be > 0");
    require(sigma > 0.0, "lifespan_bound: sigma must be > 0");
    require(K > 0.0, "lifespan_bound: K must be > 0 (momentum != 0)");
    const double beta = gradient_bound_exponent(gamma, n);
    return std::pow(E0, 1.0 + beta) / (sigma * K);
}

double lifespan_ode_oracle(double E0, double sigma, double K, double gamma, int n) {
    require(E0 > 0.0, "lifespan_ode_oracle: E0 must be > 0");
    require(sigma > 0.0 && K > 0.0, "lifespan_ode_oracle: sigma, K must be > 0");
    const double beta = gradient_bound_exponent(gamma, n);
    // Separable: T = int_0^{E0} e^beta de / (sigma K).
    const double integral = adaptive_simpson([beta](double e) { return std::pow(e, beta); }, 0.0, E0,
                                             1e-13 * std::pow(E0, 1.0 + beta));
    return integral / (sigma * K);
}

double envelope_exponent(double gamma, int n) {
    return 2.0 * eiem_upper_exponent(gamma, n) * gradient_bound_exponent(gamma, n);
}

double envelope_constant(double sigma, double K, double C2, double gamma, int n, double momentum_norm,
                         double m) {
    require(sigma > 0.0 && K > 0.0 && C2 > 0.0, "envelope_constant: sigma, K, C2 must be > 0");
    require(momentum_norm != 0.0, "envelope_constant: requires momentum != 0");
    require(m > 0.0, "envelope_constant: m must be > 0");
    const double beta = gradient_bound_exponent(gamma, n);
    const double kappa = eiem_upper_exponent(gamma, n);
    const double g_rate = momentum_norm * momentum_norm / (2.0 * m);
    return sigma * K * std::pow(C2, -beta) * std::pow(g_rate, kappa * beta);
}

double envelope_extinction_time(double E0, double L, double e) {
    require(E0 > 0.0 && L > 0.0, "envelope_extinction_time: E0, L must be > 0");
    return std::pow((e + 1.0) * E0 / L, 1.0 / (e + 1.0));
}

}  // namespace blowup
