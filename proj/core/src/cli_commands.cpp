#include "blowup/cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <stdexcept>

#include "blowup/constants.hpp"
#include "blowup/csv.hpp"
#include "blowup/snapshot.hpp"

namespace blowup {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void ensure_parent_dir(const std::string& path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

JsonValue stats_value(const RunStats& st) {
    JsonValue v = JsonValue::object();
    v.set("mass_initial", st.mass_initial);
    v.set("mass_final", st.mass_final);
    v.set("mass_drift_rel", st.mass_drift_rel);
    JsonValue pi = JsonValue::array();
    for (double c : st.momentum_initial) pi.push(JsonValue::number(c));
    v.set("momentum_initial", std::move(pi));
    JsonValue pf = JsonValue::array();
    for (double c : st.momentum_final) pf.push(JsonValue::number(c));
    v.set("momentum_final", std::move(pf));
    v.set("momentum_drift_abs", st.momentum_drift_abs);
    v.set("min_density", st.min_density);
    v.set("max_subfloor_mass_fraction", st.max_subfloor_mass_fraction);
    v.set("max_div_h_rel", st.max_div_h_rel);
    v.set("max_lorentz_discrepancy", st.max_lorentz_discrepancy);
    v.set("resolution_fraction", st.resolution_fraction);
    v.set("steps_completed", static_cast<std::int64_t>(st.steps_completed));
    return v;
}

JsonValue report_value(const CertificateReport& r) {
    JsonValue v = JsonValue::object();
    v.set("name", r.name);
    v.set("lhs", r.lhs);
    v.set("rhs", r.rhs);
    v.set("slack", r.slack);
    v.set("pass", r.pass);
    v.set("tolerance_class", r.tolerance_class);
    v.set("context", r.context);
    return v;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    if (cfg.outputs.csv_path.empty() || cfg.outputs.json_path.empty())
        throw std::invalid_argument("simulate: csv_path and json_path must be set");

    const State initial = build_state(cfg.scenario, cfg.solver.order);
    const Trajectory traj = run_simulation(initial, cfg.solver);
    const int n = initial.grid.n_dim;

    ensure_parent_dir(cfg.outputs.csv_path);
    write_text_file(cfg.outputs.csv_path, trajectory_to_csv(traj.samples, n));

    JsonValue meta = JsonValue::object();
    meta.set("config", run_config_value(cfg));
    meta.set("termination", termination_name(traj.reason));
    meta.set("samples", static_cast<std::int64_t>(traj.samples.size()));
    meta.set("stats", stats_value(traj.stats));
    ensure_parent_dir(cfg.outputs.json_path);
    write_text_file(cfg.outputs.json_path, meta.dump() + "\n");

    if (!cfg.outputs.snapshot_dir.empty()) {
        std::filesystem::create_directories(cfg.outputs.snapshot_dir);
        const std::filesystem::path dir(cfg.outputs.snapshot_dir);
        write_snapshot(initial, (dir / "initial.mhds").string());
        write_snapshot(traj.final_state, (dir / "final.mhds").string());
    }

    out << "scenario " << cfg.scenario.name << ": " << traj.stats.steps_completed
        << " steps, " << traj.samples.size() << " samples, termination "
        << termination_name(traj.reason) << "\n";
    out << "mass drift " << num(traj.stats.mass_drift_rel) << " rel, momentum drift "
        << num(traj.stats.momentum_drift_abs) << " abs, div H drift "
        << num(traj.stats.max_div_h_rel) << " rel\n";
    out << "wrote " << cfg.outputs.csv_path << "\n";
    out << "wrote " << cfg.outputs.json_path << "\n";
    if (!cfg.outputs.snapshot_dir.empty())
        out << "wrote snapshots under " << cfg.outputs.snapshot_dir << "\n";

    if (traj.reason != TerminationReason::reached_t_end) {
        out << "run ended early: " << termination_name(traj.reason) << " after "
            << traj.stats.steps_completed << " steps\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_check(const std::string& csv_path, const Params& params, const ToleranceSet& tol,
              const std::string& json_path, std::ostream& out) {
    if (!(params.gamma > 1.0) || !(params.A > 0.0))
        throw std::invalid_argument("check: requires gamma > 1 and A > 0");
    const std::vector<EnergyBreakdown> samples = read_trajectory_csv(csv_path);
    if (samples.empty()) throw SchemaError("check: no data rows in " + csv_path);
    const int n_dim = static_cast<int>(samples.front().P.size());

    const std::vector<CertificateReport> reports =
        evaluate_certificates(samples, params, n_dim, tol);

    int passed = 0, failed = 0, skipped_n = 0, informational = 0;
    for (const CertificateReport& r : reports) {
        out << certificate_line(r) << "\n";
        if (r.context.rfind("skipped:", 0) == 0)
            ++skipped_n;
        else if (r.tolerance_class == "asymptotic")
            ++informational;
        else if (r.pass)
            ++passed;
        else
            ++failed;
    }
    out << reports.size() << " certificates: " << passed << " passed, " << failed
        << " failed, " << skipped_n << " skipped, " << informational << " informational\n";

    if (!json_path.empty()) {
        JsonValue arr = JsonValue::array();
        for (const CertificateReport& r : reports) arr.push(report_value(r));
        ensure_parent_dir(json_path);
        write_text_file(json_path, arr.dump() + "\n");
        out << "wrote " << json_path << "\n";
    }
    return all_required_pass(reports) ? kExitOk : kExitCheckFailed;
}

int cmd_constants(const ConstantsInput& in, const std::string& json_path, std::ostream& out) {
    struct Row {
        const char* name;
        const char* formula;
        std::function<double()> eval;
    };
    const Params& p = in.params;
    const int n = in.n_dim;

    double k1 = 0.0, k2 = 0.0, k = 0.0, sigma = 0.0;
    bool have_k1 = false, have_k2 = false, have_k = false, have_sigma = false;
    const std::vector<Row> rows = {
        {"K1", "m^{(n+2)/(2n)} ((gamma-1)/(m A))^{(n-2)/(2n(gamma-1))}",
         [&] {
             k1 = constant_K1(in.m, p.A, p.gamma, n);
             have_k1 = true;
             return k1;
         }},
        {"K2", "sharp gradient-embedding constant from the extremal profile (1+r^2)^{-(n-2)/2}",
         [&] {
             k2 = constant_K2(n);
             have_k2 = true;
             return k2;
         }},
        {"K", "|P|^2 / (K1^2 K2)",
         [&] {
             if (!have_k1 || !have_k2) throw std::invalid_argument("K needs K1 and K2");
             k = constant_K(in.momentum_norm, k1, k2);
             have_k = true;
             return k;
         }},
        {"C_gn", "b^{n(gamma-1)/D} + b^{-2 gamma/D}, b = 2 gamma/(n(gamma-1)), D = (n+2) gamma - n",
         [&] { return constant_Cgn(p.gamma, n); }},
        {"C1", "A/(gamma-1) (m / C_gn)^{D/2} 2^{-n(gamma-1)/2}",
         [&] { return constant_C1(p.A, p.gamma, n, in.m); }},
        {"C2", "(Q0/4) G0^{-max(2-n(gamma-1),1)/2}",
         [&] { return constant_C2(p.gamma, in.Q0, in.G0, n); }},
        {"sigma", "min(mu, (n+1) mu + n lambda)",
         [&] {
             sigma = constant_sigma(p.mu, p.lambda, n);
             have_sigma = true;
             return sigma;
         }},
        {"T_star", "E0^{1+(n-2)/(n(gamma-1))} / (sigma K)",
         [&] {
             if (!have_sigma || !have_k) throw std::invalid_argument("T_star needs sigma and K");
             return lifespan_bound(in.E0, sigma, k, p.gamma, n);
         }},
    };

    JsonValue inputs = JsonValue::object();
    inputs.set("A", p.A);
    inputs.set("gamma", p.gamma);
    inputs.set("mu", p.mu);
    inputs.set("lambda", p.lambda);
    inputs.set("nu", p.nu);
    inputs.set("n_dim", n);
    inputs.set("m", in.m);
    inputs.set("momentum_norm", in.momentum_norm);
    inputs.set("E0", in.E0);
    inputs.set("G0", in.G0);
    inputs.set("F0", in.F0);
    inputs.set("Q0", in.Q0);

    JsonValue list = JsonValue::array();
    for (const Row& row : rows) {
        JsonValue entry = JsonValue::object();
        entry.set("name", row.name);
        entry.set("formula", row.formula);
        try {
            const double value = row.eval();
            entry.set("value", value);
            out << row.name << " = " << format_double(value) << "   [" << row.formula
                << "]\n";
        } catch (const std::exception& ex) {
            entry.set("error", ex.what());
            out << row.name << " unavailable: " << ex.what() << "\n";
        }
        list.push(std::move(entry));
    }

    if (!json_path.empty()) {
        JsonValue doc = JsonValue::object();
        doc.set("inputs", std::move(inputs));
        doc.set("constants", std::move(list));
        ensure_parent_dir(json_path);
        write_text_file(json_path, doc.dump() + "\n");
        out << "wrote " << json_path << "\n";
    }
    return kExitOk;
}

int cmd_oracle(const GaussianScenario& scenario, const std::vector<int>& levels,
               const std::string& json_path, std::ostream& out) {
    const QuadratureStudy study = quadrature_convergence_study(scenario, levels);

    out << "scenario " << scenario.name << ", levels";
    for (int n : study.levels) out << " " << n;
    out << "\n";
    for (const QuadratureStudyRow& row : study.rows) out << study_row_line(row) << "\n";
    out << (study.pass ? "study passed\n" : "study failed\n");

    if (!json_path.empty()) {
        JsonValue doc = JsonValue::object();
        doc.set("scenario", scenario_value(scenario));
        JsonValue lv = JsonValue::array();
        for (int n : study.levels) lv.push(JsonValue::integer(n));
        doc.set("levels", std::move(lv));
        JsonValue sp = JsonValue::array();
        for (double h : study.spacings) sp.push(JsonValue::number(h));
        doc.set("spacings", std::move(sp));
        JsonValue rows = JsonValue::array();
        for (const QuadratureStudyRow& row : study.rows) {
            JsonValue rv = JsonValue::object();
            rv.set("functional", row.functional);
            JsonValue values = JsonValue::array();
            for (double v : row.values) values.push(JsonValue::number(v));
            rv.set("values", std::move(values));
            JsonValue errs = JsonValue::array();
            for (double e : row.box_errors) errs.push(JsonValue::number(e));
            rv.set("box_errors", std::move(errs));
            rv.set("box_value", row.box_value);
            rv.set("closed_form", row.closed_form);
            rv.set("finest_rel_error", row.finest_rel_error);
            rv.set("order", row.order);
            rv.set("leading_order", row.leading_order);
            rv.set("expansion_residual", row.expansion_residual);
            rv.set("at_floor", row.at_floor);
            rv.set("monotone", row.monotone);
            rv.set("pass", row.pass);
            rows.push(std::move(rv));
        }
        doc.set("rows", std::move(rows));
        doc.set("pass", study.pass);
        ensure_parent_dir(json_path);
        write_text_file(json_path, doc.dump() + "\n");
        out << "wrote " << json_path << "\n";
    }
    return study.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace blowup
