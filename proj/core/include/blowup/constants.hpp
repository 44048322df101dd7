#pragma once

#include "blowup/params.hpp"

namespace blowup {

// Closed-form constants for the momentum/energy inequality chain. Dimension n
// is a parameter so the n = 3 magnetohydrodynamic path and the general-n
// Navier-Stokes path share one implementation.

// Duality + interpolation constant: |P| <= K1 * E_i^{(n-2)/(2n(gamma-1))} * (int |u|^{2n/(n-2)})^{(n-2)/(2n)}.
// K1 = m^{(n+2)/(2n)} * ((gamma-1)/(m A))^{(n-2)/(2n(gamma-1))}.
// Requires gamma >= 2n/(n+2) (interpolation exponent in [0, 1]) and n >= 3.
double constant_K1(double m, double A, double gamma, int n = 3);

// Embedding constant: (int |u|^{2n/(n-2)})^{(n-2)/n} <= K2 * int |Du|^2.
// Sharp value from the extremal profile (1+r^2)^{-(n-2)/2}:
//   1/K2 = Igrad / I6^{(n-2)/n},
//   Igrad = (n-2)^2 |S^{n-1}| B((n+2)/2, (n-2)/2) / 2,  I6 = |S^{n-1}| B(n/2, n/2) / 2.
double constant_K2(int n);

// Rayleigh quotient (int u^6)^{1/3} / int |Du|^2 of the radial extremal
// profile (1+r^2)^{-1/2} ramped to zero over [R/2, R]. Compact support keeps
// the trial function admissible, so the quotient stays below constant_K2(3)
// for every R and climbs toward it as the cutoff recedes.
double sobolev_extremal_quotient(double cutoff_radius);

// Two-term interpolation constant, base b = 2 gamma / (n (gamma - 1)),
// D = (n+2) gamma - n:  C = b^{n(gamma-1)/D} + b^{-2 gamma/D}.
double constant_Cgn(double gamma, int n);

// Lower-bound constant: C1 / G^{n(gamma-1)/2} <= E_i (+ E_m).
// C1 = A/(gamma-1) * (m / C_{gamma,n})^{D/2} * 2^{-n(gamma-1)/2}; the trailing
// power of two converts ||x|^2 rho||_1 into 2G.
double constant_C1(double A, double gamma, int n, double m);

// Upper-bound constant on the G' > 0 tail: E_i + E_m <= C2 / G^{kappa_upper}.
// C2 = (Q0/4) * G0^{-q_log_slope(gamma, n)}.
double constant_C2(double gamma, double Q0, double G0, int n = 3);

// K = |P|^2 / (K1^2 K2); requires |P| != 0.
double constant_K(double momentum_norm, double K1, double K2);

// Dissipation >= sigma * int |Du|^2 with sigma = min(mu, (n+1) mu + n lambda);
// on the admissible domain (lambda + 2mu/n > 0) the min is always mu.
double constant_sigma(double mu, double lambda, int n);

// Exponent beta = (n-2)/(n(gamma-1)) in int |Du|^2 >= K E_i^{-beta}.
double gradient_bound_exponent(double gamma, int n);

// Slope kappa in (log Q)' <= kappa (log G)' on the G' > 0 tail:
// kappa = max(2 - n(gamma-1), 1) / 2.
double q_log_slope(double gamma, int n = 3);

// Exponent in E_i + E_m <= C2 / G^k: k = min(n(gamma-1), 1) / 2 = 1 - q_log_slope.
double eiem_upper_exponent(double gamma, int n = 3);

// Coefficient in G(t) <= c E(0) t^2 + F(0) t + G(0): c = max(1, n(gamma-1)/2).
double g_upper_coefficient(double gamma, int n = 3);

// Linear-decay lifespan bound T_star = E0^{1+beta} / (sigma K).
double lifespan_bound(double E0, double sigma, double K, double gamma, int n);

// Numeric integration of the sharper ODE bound E' = -sigma K E^{-beta}
// (always <= T_star; equals T_star/(1+beta) in closed form).
double lifespan_ode_oracle(double E0, double sigma, double K, double gamma, int n);

// Decay-envelope data: on the tail, dE/dt <= -L t^e with
// e = 2 * eiem_upper_exponent * beta and
// L = sigma K C2^{-beta} (P^2/(2m))^{eiem_upper_exponent * beta}.
double envelope_exponent(double gamma, int n);
double envelope_constant(double sigma, double K, double C2, double gamma, int n, double momentum_norm,
                         double m);

// Extinction time of the envelope bound: E(0) = L T^{e+1} / (e+1).
double envelope_extinction_time(double E0, double L, double e);

}  // namespace blowup
