#pragma once

#include <string>
#include <vector>

#include "blowup/functionals.hpp"
#include "blowup/params.hpp"

namespace blowup {

// One checked inequality or identity, reported as lhs <= rhs with
// slack = rhs - lhs at the worst sample. Skipped checks keep pass = true and
// explain themselves in `context`.
struct CertificateReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = true;
    std::string tolerance_class;  // exact-to-roundoff | truncation-error | asymptotic
    std::string context;
};

struct ToleranceSet {
    double exact = 1e-12;         // relative, for finite-sum identities
    double truncation = 1e-2;     // relative, for discretization-limited bounds
    double contamination = 1e-8;  // boundary-band mass fraction that voids moment checks

    // Accepts "exact-to-roundoff", "truncation-error", "contamination-fraction".
    void set(const std::string& name, double value);
};

// Slack on the per-pair energy monotonicity check, in units of E(0).
inline constexpr double kMonotonicitySlack = 1e-10;

// First sample index from which G keeps growing through the end of the run
// (G' = F by the inertia identity, so the recorded F column is the witness),
// or -1 when no such tail exists.
long tail_onset_index(const std::vector<EnergyBreakdown>& samples);

// Largest boundary-band mass fraction over the samples.
double boundary_mass_fraction(const std::vector<EnergyBreakdown>& samples);

// Momentum inequality chain at each sample, worst case reported:
// holder-momentum, interpolation-momentum, sobolev-velocity, and the composed
// gradient-lower-bound. Needs n_dim == 3 for the Sobolev links.
std::vector<CertificateReport> momentum_chain_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol);

// energy-monotonicity (per consecutive pair, slack 1e-10 E(0)),
// energy-dissipation-identity (centered dE/dt + dissipation), and
// energy-dissipation-lower-bound (dE/dt <= -sigma grad - nu curl).
// Requires at least 3 samples with strictly increasing times.
std::vector<CertificateReport> energy_dissipation_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol);

// inertia-derivative-identity (G' = F) and radial-momentum-derivative-identity
// (F' = 2 E_k + E_m + n (gamma-1) E_i). Valid only while boundary-band mass
// stays below the contamination fraction; otherwise both reports are marked
// invalid-domain-truncation and not claimed.
std::vector<CertificateReport> moment_identity_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol);

// moment-sandwich-lower:  P^2/(2m) t^2 + F(0) t + G(0) <= G(t)
// moment-sandwich-upper:  G(t) <= c E(0) t^2 + F(0) t + G(0)
std::vector<CertificateReport> moment_sandwich_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol);

// q-positive, q-cauchy-schwarz (E_i + E_m <= Q/(4G) to roundoff), and
// q-log-slope ((log Q)' <= kappa (log G)' on the growth tail).
std::vector<CertificateReport> q_chain_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol);

// internal-magnetic-lower-bound (C1 / G^{n(gamma-1)/2} <= E_i + E_m at every
// sample) and internal-magnetic-upper-bound (E_i + E_m <= C2 / G^k on the
// growth tail; marked asymptotic-not-reached when there is no tail).
std::vector<CertificateReport> internal_magnetic_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol);

// decay-envelope: centered dE/dt <= -L t^e on the growth tail. Asymptotic
// class: reported for trend inspection, never gates the exit code.
CertificateReport decay_envelope_report(const std::vector<EnergyBreakdown>& samples,
                                        const Params& params, int n_dim,
                                        const ToleranceSet& tol);

// Conservation checks plus every family above, in a stable order.
std::vector<CertificateReport> evaluate_certificates(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol);

// Ignores the asymptotic class; skipped checks count as passing.
bool all_required_pass(const std::vector<CertificateReport>& reports);

std::string certificate_line(const CertificateReport& report);

}  // namespace blowup
