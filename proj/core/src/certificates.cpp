#include "blowup/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "blowup/constants.hpp"

namespace blowup {

namespace {

const char* kExact = "exact-to-roundoff";
const char* kTrunc = "truncation-error";
const char* kAsym = "asymptotic";

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

CertificateReport make_report(std::string name, double lhs, double rhs, const char* cls,
                              std::string context) {
    CertificateReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.pass = lhs <= rhs;
    r.tolerance_class = cls;
    r.context = std::move(context);
    return r;
}

CertificateReport skipped(std::string name, const char* cls, std::string reason) {
    CertificateReport r;
    r.name = std::move(name);
    r.pass = true;
    r.tolerance_class = cls;
    r.context = "skipped: " + std::move(reason);
    return r;
}

// Tracks the worst (largest) violation and where it happened.
struct Worst {
    double value = -std::numeric_limits<double>::infinity();
    double t = 0.0;
    void offer(double v, double at) {
        if (v > value) {
            value = v;
            t = at;
        }
    }
    bool seen() const { return value > -std::numeric_limits<double>::infinity(); }
};

// Three-point derivative at the middle sample, exact for quadratics on a
// nonuniform stencil.
double centered_derivative(double fm, double f0, double fp, double hm, double hp) {
    return (hm * hm * fp + (hp * hp - hm * hm) * f0 - hp * hp * fm) /
           (hm * hp * (hm + hp));
}

double centered_at(const std::vector<EnergyBreakdown>& s, std::size_t j,
                   double (*field)(const EnergyBreakdown&)) {
    const double hm = s[j].t - s[j - 1].t;
    const double hp = s[j + 1].t - s[j].t;
    return centered_derivative(field(s[j - 1]), field(s[j]), field(s[j + 1]), hm, hp);
}

double field_E(const EnergyBreakdown& b) { return b.E_total; }
double field_G(const EnergyBreakdown& b) { return b.G; }
double field_F(const EnergyBreakdown& b) { return b.F; }
double field_logQ(const EnergyBreakdown& b) { return std::log(b.Q); }
double field_logG(const EnergyBreakdown& b) { return std::log(b.G); }

void require_increasing(const std::vector<EnergyBreakdown>& s) {
    for (std::size_t j = 1; j < s.size(); ++j)
        if (!(s[j].t > s[j - 1].t))
            throw std::invalid_argument("sample times must be strictly increasing");
}

}  // namespace

void ToleranceSet::set(const std::string& name, double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument("tolerance must be positive: " + name);
    if (name == "exact-to-roundoff")
        exact = value;
    else if (name == "truncation-error")
        truncation = value;
    else if (name == "contamination-fraction")
        contamination = value;
    else
        throw std::invalid_argument("unknown tolerance class: " + name);
}

long tail_onset_index(const std::vector<EnergyBreakdown>& samples) {
    if (samples.empty()) return -1;
    long onset = -1;
    for (long j = static_cast<long>(samples.size()) - 1; j >= 0; --j) {
        if (samples[static_cast<std::size_t>(j)].F > 0.0)
            onset = j;
        else
            break;
    }
    return onset;
}

double boundary_mass_fraction(const std::vector<EnergyBreakdown>& samples) {
    double worst = 0.0;
    for (const auto& s : samples) {
        const double frac = s.m > 0.0 ? s.boundary_mass / s.m
                                      : std::numeric_limits<double>::infinity();
        worst = std::max(worst, frac);
    }
    return worst;
}

std::vector<CertificateReport> momentum_chain_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol) {
    std::vector<CertificateReport> out;
    if (samples.empty()) throw std::invalid_argument("no samples");
    if (n_dim != 3) {
        for (const char* name : {"holder-momentum", "interpolation-momentum",
                                 "sobolev-velocity", "gradient-lower-bound"})
            out.push_back(skipped(name, kTrunc, "chain checks need the n = 3 norm columns"));
        return out;
    }

    const double gamma = params.gamma;
    const double theta = gamma / (6.0 * (gamma - 1.0));
    Worst holder, interp, sobolev, chain;
    double scale_p = 1.0;
    for (const auto& s : samples) {
        const double p_norm = s.momentum_norm();
        scale_p = std::max(scale_p, p_norm);
        const double norm65 = std::pow(s.rho_L65, 5.0 / 6.0);
        const double norm6 = std::pow(s.u_L6, 1.0 / 6.0);
        holder.offer(p_norm - norm65 * norm6, s.t);

        if (theta <= 1.0) {
            const double rhs = std::pow(s.m, 1.0 - theta) *
                               std::pow(std::pow(s.rho_Lgamma, 1.0 / gamma), theta);
            interp.offer(norm65 - rhs, s.t);
        }

        if (s.grad_u_sq > 0.0)
            sobolev.offer(std::cbrt(s.u_L6) / (constant_K2(3) * s.grad_u_sq), s.t);
        else if (s.u_L6 > 0.0)
            sobolev.offer(std::numeric_limits<double>::infinity(), s.t);
    }

    out.push_back(make_report("holder-momentum", holder.value, tol.exact * scale_p, kExact,
                              "|P| <= ||rho||_{6/5} ||u||_6; worst at t=" + num(holder.t)));

    if (theta > 1.0) {
        out.push_back(skipped("interpolation-momentum", kExact,
                              "needs gamma >= 6/5, got " + num(gamma)));
    } else {
        out.push_back(make_report(
            "interpolation-momentum", interp.value, tol.exact * scale_p, kExact,
            "||rho||_{6/5} <= m^{1-theta} ||rho||_gamma^theta; worst at t=" + num(interp.t)));
    }

    if (!sobolev.seen()) {
        out.push_back(skipped("sobolev-velocity", kTrunc, "velocity vanishes at every sample"));
    } else {
        out.push_back(make_report("sobolev-velocity", sobolev.value, 1.0 + tol.truncation,
                                  kTrunc,
                                  "||u||_6^2 / (K2 int |Du|^2), worst at t=" + num(sobolev.t)));
    }

    const double p0 = samples.front().momentum_norm();
    if (p0 == 0.0) {
        out.push_back(skipped("gradient-lower-bound", kTrunc, "zero momentum"));
    } else if (gamma < 2.0 * n_dim / (n_dim + 2.0)) {
        out.push_back(
            skipped("gradient-lower-bound", kTrunc, "needs gamma >= 6/5, got " + num(gamma)));
    } else {
        const double beta = gradient_bound_exponent(gamma, n_dim);
        const double k2 = constant_K2(n_dim);
        for (const auto& s : samples) {
            const double k1 = constant_K1(s.m, params.A, gamma, n_dim);
            const double k = constant_K(s.momentum_norm(), k1, k2);
            if (s.grad_u_sq > 0.0 && s.E_i > 0.0)
                chain.offer(k * std::pow(s.E_i, -beta) / s.grad_u_sq, s.t);
            else
                chain.offer(std::numeric_limits<double>::infinity(), s.t);
        }
        out.push_back(make_report("gradient-lower-bound", chain.value, 1.0 + tol.truncation,
                                  kTrunc,
                                  "K E_i^{-beta} / int |Du|^2, worst at t=" + num(chain.t)));
    }
    return out;
}

std::vector<CertificateReport> energy_dissipation_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol) {
    if (samples.size() < 3)
        throw std::invalid_argument("energy dissipation checks need at least 3 samples");
    require_increasing(samples);

    std::vector<CertificateReport> out;
    const double e0 = samples.front().E_total;

    Worst mono;
    for (std::size_t j = 0; j + 1 < samples.size(); ++j)
        mono.offer(samples[j + 1].E_total - samples[j].E_total, samples[j + 1].t);
    out.push_back(make_report("energy-monotonicity", mono.value,
                              kMonotonicitySlack * std::max(e0, 0.0), kExact,
                              "max E(t_{k+1}) - E(t_k), worst at t=" + num(mono.t)));

    const double sigma = constant_sigma(params.mu, params.lambda, n_dim);
    Worst ident, lower;
    double rate_scale = 0.0;
    for (std::size_t j = 1; j + 1 < samples.size(); ++j) {
        const double dedt = centered_at(samples, j, field_E);
        rate_scale = std::max({rate_scale, std::fabs(dedt), samples[j].dissipation});
        ident.offer(std::fabs(dedt + samples[j].dissipation), samples[j].t);
        lower.offer(dedt + sigma * samples[j].grad_u_sq + params.nu * samples[j].curl_H_sq,
                    samples[j].t);
    }
    const double scale = std::max(rate_scale, tol.truncation * std::max(1.0, e0));
    out.push_back(make_report("energy-dissipation-identity", ident.value,
                              tol.truncation * scale, kTrunc,
                              "|dE/dt + dissipation|, worst at t=" + num(ident.t)));
    out.push_back(make_report(
        "energy-dissipation-lower-bound", lower.value, tol.truncation * scale, kTrunc,
        "dE/dt + sigma int |Du|^2 + nu int |curl H|^2 <= 0, worst at t=" + num(lower.t)));
    return out;
}

std::vector<CertificateReport> moment_identity_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol) {
    std::vector<CertificateReport> out;
    const char* names[2] = {"inertia-derivative-identity",
                            "radial-momentum-derivative-identity"};
    if (samples.size() < 3) {
        for (const char* name : names)
            out.push_back(skipped(name, kTrunc, "needs at least 3 samples"));
        return out;
    }
    require_increasing(samples);

    const double frac = boundary_mass_fraction(samples);
    if (frac > tol.contamination) {
        for (const char* name : names)
            out.push_back(skipped(name, kTrunc,
                                  "invalid-domain-truncation: boundary mass fraction " +
                                      num(frac) + " exceeds " + num(tol.contamination) +
                                      "; identity not claimed on this run"));
        return out;
    }

    const double gamma = params.gamma;
    Worst g_res, f_res;
    double scale_f = 1.0, scale_tr = 1.0;
    for (std::size_t j = 1; j + 1 < samples.size(); ++j) {
        const EnergyBreakdown& s = samples[j];
        scale_f = std::max(scale_f, std::fabs(s.F));
        g_res.offer(std::fabs(centered_at(samples, j, field_G) - s.F), s.t);
        const double trace = 2.0 * s.E_k + s.E_m + n_dim * (gamma - 1.0) * s.E_i;
        scale_tr = std::max(scale_tr, std::fabs(trace));
        f_res.offer(std::fabs(centered_at(samples, j, field_F) - trace), s.t);
    }
    out.push_back(make_report(names[0], g_res.value, tol.truncation * scale_f, kTrunc,
                              "|dG/dt - F|, worst at t=" + num(g_res.t) +
                                  "; boundary fraction " + num(frac)));
    out.push_back(make_report(
        names[1], f_res.value, tol.truncation * scale_tr, kTrunc,
        "|dF/dt - (2 E_k + E_m + n (gamma-1) E_i)|, worst at t=" + num(f_res.t)));
    return out;
}

std::vector<CertificateReport> moment_sandwich_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol) {
    std::vector<CertificateReport> out;
    if (samples.empty()) throw std::invalid_argument("no samples");
    require_increasing(samples);

    const EnergyBreakdown& s0 = samples.front();
    const double m0 = s0.m;
    const double p0 = s0.momentum_norm();
    const double c_up = g_upper_coefficient(params.gamma, n_dim);
    double scale_g = 1.0;
    for (const auto& s : samples) scale_g = std::max(scale_g, s.G);

    Worst lower, upper;
    for (const auto& s : samples) {
        const double tau = s.t - s0.t;
        const double base = s0.G + s0.F * tau;
        lower.offer(base + p0 * p0 / (2.0 * m0) * tau * tau - s.G, s.t);
        upper.offer(s.G - (base + c_up * s0.E_total * tau * tau), s.t);
    }
    out.push_back(make_report(
        "moment-sandwich-lower", lower.value, tol.truncation * scale_g, kTrunc,
        "P^2/(2m) t^2 + F(0) t + G(0) <= G(t), worst at t=" + num(lower.t)));
    out.push_back(make_report(
        "moment-sandwich-upper", upper.value, tol.truncation * scale_g, kTrunc,
        "G(t) <= " + num(c_up) + " E(0) t^2 + F(0) t + G(0), worst at t=" + num(upper.t)));
    return out;
}

std::vector<CertificateReport> q_chain_reports(const std::vector<EnergyBreakdown>& samples,
                                               const Params& params, int n_dim,
                                               const ToleranceSet& tol) {
    std::vector<CertificateReport> out;
    if (samples.empty()) throw std::invalid_argument("no samples");
    require_increasing(samples);

    bool any_internal = false;
    for (const auto& s : samples) any_internal = any_internal || s.E_i > 0.0;
    if (!any_internal) {
        out.push_back(skipped("q-positive", kExact, "internal energy vanishes"));
    } else {
        Worst worst;
        for (const auto& s : samples)
            if (s.E_i > 0.0) worst.offer(-s.Q, s.t);
        CertificateReport r = make_report("q-positive", worst.value, 0.0, kExact,
                                          "Q > 0 wherever E_i > 0, min Q at t=" + num(worst.t));
        r.pass = worst.value < 0.0;
        out.push_back(r);
    }

    Worst cs;
    double scale_e = 1.0;
    for (const auto& s : samples) {
        scale_e = std::max(scale_e, s.E_total);
        if (s.G > 0.0) cs.offer(s.E_i + s.E_m - s.Q / (4.0 * s.G), s.t);
    }
    if (!cs.seen()) {
        out.push_back(skipped("q-cauchy-schwarz", kExact, "G vanishes at every sample"));
    } else {
        out.push_back(make_report("q-cauchy-schwarz", cs.value, tol.exact * scale_e, kExact,
                                  "E_i + E_m <= Q/(4G), worst at t=" + num(cs.t)));
    }

    const long onset = tail_onset_index(samples);
    const long last = static_cast<long>(samples.size()) - 1;
    if (onset < 0 || onset + 1 > last - 1) {
        out.push_back(
            skipped("q-log-slope", kTrunc, "asymptotic-not-reached: no usable G' > 0 tail"));
        return out;
    }
    const double kappa = q_log_slope(params.gamma, n_dim);
    Worst slope;
    double slope_ctx = 0.0;
    for (long j = onset + 1; j <= last - 1; ++j) {
        const std::size_t k = static_cast<std::size_t>(j);
        if (!(samples[k - 1].Q > 0.0 && samples[k].Q > 0.0 && samples[k + 1].Q > 0.0 &&
              samples[k - 1].G > 0.0 && samples[k].G > 0.0 && samples[k + 1].G > 0.0)) {
            out.push_back(make_report("q-log-slope", 1.0, 0.0, kTrunc,
                                      "Q or G not positive inside the growth tail"));
            return out;
        }
        const double s_q = centered_at(samples, k, field_logQ);
        const double s_g = centered_at(samples, k, field_logG);
        const double excess = (s_q - kappa * s_g) / (1.0 + std::fabs(s_g));
        if (excess > slope.value) slope_ctx = s_g;
        slope.offer(excess, samples[k].t);
    }
    out.push_back(make_report(
        "q-log-slope", slope.value, tol.truncation, kTrunc,
        "(log Q)' <= " + num(kappa) + " (log G)' on the tail (onset t=" +
            num(samples[static_cast<std::size_t>(onset)].t) +
            ", (log G)'=" + num(slope_ctx) + "), worst at t=" + num(slope.t)));
    return out;
}

std::vector<CertificateReport> internal_magnetic_reports(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol) {
    std::vector<CertificateReport> out;
    if (samples.empty()) throw std::invalid_argument("no samples");
    require_increasing(samples);

    const double gamma = params.gamma;
    const double e_low = n_dim * (gamma - 1.0) / 2.0;
    Worst lower;
    for (const auto& s : samples) {
        const double c1 = constant_C1(params.A, gamma, n_dim, s.m);
        const double denom = s.E_i + s.E_m;
        if (denom > 0.0 && s.G > 0.0)
            lower.offer(c1 * std::pow(s.G, -e_low) / denom, s.t);
        else
            lower.offer(std::numeric_limits<double>::infinity(), s.t);
    }
    out.push_back(make_report(
        "internal-magnetic-lower-bound", lower.value, 1.0 + tol.truncation, kTrunc,
        "C1 G^{-" + num(e_low) + "} / (E_i + E_m), worst at t=" + num(lower.t)));

    const long onset = tail_onset_index(samples);
    if (onset < 0) {
        out.push_back(skipped("internal-magnetic-upper-bound", kTrunc,
                              "asymptotic-not-reached: no persistent G' > 0 tail"));
        return out;
    }
    const EnergyBreakdown& s0 = samples.front();
    if (!(s0.Q > 0.0 && s0.G > 0.0)) {
        out.push_back(
            skipped("internal-magnetic-upper-bound", kTrunc, "initial Q or G not positive"));
        return out;
    }
    const double c2 = constant_C2(gamma, s0.Q, s0.G, n_dim);
    const double e_up = eiem_upper_exponent(gamma, n_dim);
    Worst upper;
    for (long j = onset; j < static_cast<long>(samples.size()); ++j) {
        const EnergyBreakdown& s = samples[static_cast<std::size_t>(j)];
        const double bound = c2 * std::pow(s.G, -e_up);
        upper.offer(bound > 0.0 ? (s.E_i + s.E_m) / bound
                                : std::numeric_limits<double>::infinity(),
                    s.t);
    }
    out.push_back(make_report(
        "internal-magnetic-upper-bound", upper.value, 1.0 + tol.truncation, kTrunc,
        "(E_i + E_m) / (C2 G^{-" + num(e_up) + "}) on the tail (onset t=" +
            num(samples[static_cast<std::size_t>(onset)].t) +
            "), worst at t=" + num(upper.t)));
    return out;
}

CertificateReport decay_envelope_report(const std::vector<EnergyBreakdown>& samples,
                                        const Params& params, int n_dim,
                                        const ToleranceSet& tol) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    require_increasing(samples);
    const EnergyBreakdown& s0 = samples.front();
    const double p0 = s0.momentum_norm();
    if (p0 == 0.0) return skipped("decay-envelope", kAsym, "zero momentum");
    if (n_dim < 3 || params.gamma < 2.0 * n_dim / (n_dim + 2.0))
        return skipped("decay-envelope", kAsym, "outside the constants domain");
    if (samples.size() < 3)
        return skipped("decay-envelope", kAsym, "needs at least 3 samples");
    const long onset = tail_onset_index(samples);
    const long last = static_cast<long>(samples.size()) - 1;
    if (onset < 0 || onset + 1 > last - 1)
        return skipped("decay-envelope", kAsym, "asymptotic-not-reached: no usable G' > 0 tail");
    if (!(s0.Q > 0.0 && s0.G > 0.0))
        return skipped("decay-envelope", kAsym, "initial Q or G not positive");

    const double sigma = constant_sigma(params.mu, params.lambda, n_dim);
    const double k1 = constant_K1(s0.m, params.A, params.gamma, n_dim);
    const double k = constant_K(p0, k1, constant_K2(n_dim));
    const double c2 = constant_C2(params.gamma, s0.Q, s0.G, n_dim);
    const double e = envelope_exponent(params.gamma, n_dim);
    const double big_l = envelope_constant(sigma, k, c2, params.gamma, n_dim, p0, s0.m);

    Worst worst;
    double rate_scale = 0.0;
    for (long j = onset + 1; j <= last - 1; ++j) {
        const std::size_t idx = static_cast<std::size_t>(j);
        const double dedt = centered_at(samples, idx, field_E);
        rate_scale = std::max(rate_scale, std::fabs(dedt));
        const double tau = samples[idx].t - s0.t;
        worst.offer(dedt + big_l * std::pow(tau, e), samples[idx].t);
    }
    const double scale = std::max(rate_scale, tol.truncation * std::max(1.0, s0.E_total));
    return make_report("decay-envelope", worst.value, tol.truncation * scale, kAsym,
                       "dE/dt <= -L t^e on the tail, L=" + num(big_l) + ", e=" + num(e) +
                           ", worst at t=" + num(worst.t));
}

std::vector<CertificateReport> evaluate_certificates(
    const std::vector<EnergyBreakdown>& samples, const Params& params, int n_dim,
    const ToleranceSet& tol) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    require_increasing(samples);
    std::vector<CertificateReport> out;

    const EnergyBreakdown& s0 = samples.front();
    Worst mass, momentum;
    double p_scale = std::max(1.0, std::fabs(s0.m));
    for (const auto& s : samples) {
        mass.offer(std::fabs(s.m - s0.m), s.t);
        double dp = 0.0;
        for (std::size_t d = 0; d < s.P.size(); ++d)
            dp = std::max(dp, std::fabs(s.P[d] - s0.P[d]));
        momentum.offer(dp, s.t);
        p_scale = std::max(p_scale, s.momentum_norm());
    }
    out.push_back(make_report("mass-conservation", mass.value,
                              tol.exact * std::max(1.0, std::fabs(s0.m)), kExact,
                              "max |m(t) - m(0)|, worst at t=" + num(mass.t)));
    out.push_back(make_report("momentum-conservation", momentum.value, tol.exact * p_scale,
                              kExact, "max |P(t) - P(0)|, worst at t=" + num(momentum.t)));

    if (samples.size() >= 3) {
        for (auto& r : energy_dissipation_reports(samples, params, n_dim, tol))
            out.push_back(std::move(r));
    } else {
        Worst mono;
        for (std::size_t j = 0; j + 1 < samples.size(); ++j)
            mono.offer(samples[j + 1].E_total - samples[j].E_total, samples[j + 1].t);
        out.push_back(make_report("energy-monotonicity", mono.value,
                                  kMonotonicitySlack * std::max(s0.E_total, 0.0), kExact,
                                  "max E(t_{k+1}) - E(t_k), worst at t=" + num(mono.t)));
        out.push_back(
            skipped("energy-dissipation-identity", kTrunc, "needs at least 3 samples"));
        out.push_back(
            skipped("energy-dissipation-lower-bound", kTrunc, "needs at least 3 samples"));
    }

    for (auto& r : momentum_chain_reports(samples, params, n_dim, tol))
        out.push_back(std::move(r));
    for (auto& r : moment_identity_reports(samples, params, n_dim, tol))
        out.push_back(std::move(r));
    for (auto& r : moment_sandwich_reports(samples, params, n_dim, tol))
        out.push_back(std::move(r));
    for (auto& r : q_chain_reports(samples, params, n_dim, tol)) out.push_back(std::move(r));
    for (auto& r : internal_magnetic_reports(samples, params, n_dim, tol))
        out.push_back(std::move(r));
    out.push_back(decay_envelope_report(samples, params, n_dim, tol));
    return out;
}

bool all_required_pass(const std::vector<CertificateReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass && r.tolerance_class != kAsym) return false;
    return true;
}

std::string certificate_line(const CertificateReport& report) {
    std::string status;
    if (report.context.rfind("skipped:", 0) == 0)
        status = "SKIP";
    else if (report.tolerance_class == kAsym)
        status = report.pass ? "PASS" : "INFO";
    else
        status = report.pass ? "PASS" : "FAIL";
    return "[" + status + "] " + report.name + " (" + report.tolerance_class +
           ") lhs=" + num(report.lhs) + " rhs=" + num(report.rhs) +
           " slack=" + num(report.slack) + " :: " + report.context;
}

}  // namespace blowup
