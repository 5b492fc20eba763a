#include "bohm/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "json.hpp"

#include "bohm/errors.hpp"
#include "bohm/trajectory.hpp"
#include "bohm/wavefield.hpp"

namespace bohm {

using nlohmann::json;

namespace {

std::string utc_now() {
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now())));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json with_schema(const std::string& name, json body) {
    body["schema"] = name + "/1";
    return body;
}

double section_half_range(const RunConfig& cfg, const WaveField& field) {
    return cfg.scan.half_range.value_or(default_half_range(field, cfg.experiment.time_at_section()));
}

CrossSection section(const RunConfig& cfg, const WaveField& field) {
    return cross_section_scan(field, cfg.experiment.cross_section_x, section_half_range(cfg, field), cfg.scan.n_samples);
}

json valley_json(const Valley& v) {
    return {{"index", v.index},
            {"side", v.y_min >= 0.0 ? "positive" : "negative"},
            {"y_min_cm", v.y_min},
            {"y_left_cm", v.y_left},
            {"y_right_cm", v.y_right},
            {"depth_eV", v.depth},
            {"half_width_cm", v.half_width},
            {"grad_estimate_eV_per_cm", v.grad_estimate}};
}

json valley_report_json(const CrossSection& cs) {
    double qmax = 0.0;
    for (const auto& s : cs.samples) {
        if (s.flag == SampleFlag::ok) qmax = std::max(qmax, std::abs(s.Q));
    }
    json valleys = json::array();
    for (const Valley& v : cs.valleys) valleys.push_back(valley_json(v));
    return with_schema("valley-report", {{"x_cm", cs.x},
                                         {"t_s", cs.t},
                                         {"n_samples", cs.samples.size()},
                                         {"max_abs_Q_eV", qmax},
                                         {"valleys", valleys},
                                         {"diagnostic", cs.diagnostic}});
}

json step_json(const SpectrumStep& s) {
    return {{"valley", s.valley_index},
            {"tau_s", s.tau},
            {"acceleration_cm_s2", s.acceleration},
            {"delta_v_cm_s", s.delta_v},
            {"power_W", s.power_W},
            {"omega_c_per_s", s.omega_c},
            {"lambda_c_cm", s.lambda_c},
            {"I0_eV_per_Hz", s.I0},
            {"photon_energy_J", s.photon_energy_J},
            {"photon_frequency_Hz", s.photon_frequency_Hz}};
}

const char* kLambdaNote = "lambda_c = c / omega_c (not 2 pi c / omega_c)";

void write_quantum_potential(const RunConfig& cfg, OutputSet& out) {
    const WaveField field(cfg.experiment, cfg.consts);
    const CrossSection cs = section(cfg, field);
    Csv csv({"y_cm", "t_s", "R", "S_eVs", "Q_eV", "gradQ_eV_per_cm", "flag"});
    for (const FieldSample& s : cs.samples) {
        csv.row_with_tail({s.y, s.t, s.R, s.S, s.Q, s.gradQ}, s.flag == SampleFlag::ok ? "ok" : "node");
    }
    out.write("quantum_potential.csv", csv.text());
    out.write("valleys.json", dump(valley_report_json(cs)));
}

void write_valley_report(const RunConfig& cfg, OutputSet& out) {
    const WaveField field(cfg.experiment, cfg.consts);
    out.write("valleys.json", dump(valley_report_json(section(cfg, field))));
}

void write_trajectories(const RunConfig& cfg, OutputSet& out) {
    const WaveField field(cfg.experiment, cfg.consts);
    const double t_end = cfg.ensemble_t_end();
    IntegrationOptions opts;
    opts.tol = cfg.trajectories.tol;

    std::string failure;
    json paths = json::array();
    for (std::size_t i = 0; i < cfg.trajectories.y0.size(); ++i) {
        const double y0 = cfg.trajectories.y0[i];
        const Trajectory tr = integrate_trajectory(field, y0, t_end, opts);
        Csv csv({"t_s", "y_cm", "vy_cm_s", "ay_field", "ay_numeric"});
        double a_max = 0.0, mismatch = 0.0;
        for (const auto& s : tr.samples) a_max = std::max(a_max, std::abs(s.a_field));
        for (const auto& s : tr.samples) {
            csv.row({s.t, s.y, s.v_y, s.a_field, s.a_numeric});
            const double denom = std::max({std::abs(s.a_field), std::abs(s.a_numeric), 1e-6 * a_max});
            if (denom > 0.0) mismatch = std::max(mismatch, std::abs(s.a_numeric - s.a_field) / denom);
        }
        const std::string name = fmt::format("trajectory_{:03d}.csv", i);
        out.write(name, csv.text());

        json entry = {{"file", name},
                      {"y0_cm", y0},
                      {"status", tr.valid() ? "complete" : "halted_at_node"},
                      {"diagnostic", tr.diagnostic},
                      {"n_samples", tr.samples.size()},
                      {"t_end_s", tr.samples.empty() ? 0.0 : tr.samples.back().t},
                      {"y_end_cm", tr.samples.empty() ? y0 : tr.samples.back().y},
                      {"max_rel_acceleration_mismatch", mismatch}};
        if (tr.valid()) {
            const RadiatedEnergy e = trajectory_radiated_energy(field, tr);
            json per = json::object();
            for (const auto& [k, v] : e.per_valley_J) per[std::to_string(k)] = v;
            entry["radiated_energy_J"] = e.total_J;
            entry["radiated_energy_per_valley_J"] = per;
        } else if (failure.empty()) {
            failure = "trajectory from y0 = " + format_number(y0) + " cm halted: " + tr.diagnostic;
        }
        paths.push_back(entry);
    }
    out.write("trajectories.json", dump(with_schema("trajectories", {{"t_end_s", t_end}, {"trajectories", paths}})));

    EnsembleOptions eo;
    eo.n = cfg.ensemble.n;
    eo.seed = cfg.ensemble.seed;
    eo.t_end = t_end;
    eo.tol = cfg.trajectories.tol;
    eo.workers = cfg.ensemble.workers;
    const EnsembleResult ens = run_ensemble(field, eo);
    Csv pos({"y0_cm", "y_end_cm"});
    for (std::size_t i = 0; i < ens.initial_positions.size(); ++i) {
        pos.row({ens.initial_positions[i], ens.final_positions[i]});
    }
    out.write("ensemble_positions.csv", pos.text());
    out.write("ensemble.json", dump(with_schema("ensemble", {{"n", ens.n},
                                                             {"seed", ens.seed},
                                                             {"t_end_s", ens.t_end},
                                                             {"ks_statistic", ens.ks_statistic},
                                                             {"failures", ens.failures},
                                                             {"valid", ens.valid}})));
    if (!failure.empty()) throw NumericalError(failure);
    if (!ens.valid) {
        throw NumericalError("ensemble invalid: " + std::to_string(ens.failures) + " of " + std::to_string(ens.n) +
                             " transports failed");
    }
}

void write_spectrum(const RunConfig& cfg, OutputSet& out) {
    json steps = json::array();
    Csv csv({"valley", "omega_per_s", "I_eV_per_Hz"});
    for (const ValleyInput& v : valley_inputs(cfg)) {
        const SpectrumStep s = spectrum_step(cfg.consts, v);
        steps.push_back(step_json(s));
        // Log grid from three decades below the cutoff to one above; the step sits at omega_c.
        constexpr int kPoints = 81;
        for (int i = 0; i < kPoints; ++i) {
            const double w = s.omega_c * std::pow(10.0, -3.0 + 4.0 * i / (kPoints - 1));
            csv.row({static_cast<double>(s.valley_index), w, s.intensity(w)});
        }
    }
    out.write("spectrum.csv", csv.text());
    out.write("spectrum.json", dump(with_schema("spectrum", {{"mode", mode_name(cfg.mode)},
                                                             {"constants", cfg.constants_name},
                                                             {"lambda_convention", kLambdaNote},
                                                             {"valleys", steps}})));
}

void write_table1(const RunConfig& cfg, OutputSet& out) {
    Csv csv({"valley", "omega_c_per_s", "lambda_c_cm", "I0_eV_per_Hz", "P_T_W", "P_J_W"});
    json rows = json::array();
    for (const Table1Row& r : table1_rows(cfg)) {
        const SpectrumStep& s = r.step;
        csv.row({static_cast<double>(s.valley_index), s.omega_c, s.lambda_c, s.I0, r.P_T, r.P_J});
        rows.push_back({{"valley", s.valley_index},
                        {"omega_c_per_s", s.omega_c},
                        {"lambda_c_cm", s.lambda_c},
                        {"I0_eV_per_Hz", s.I0},
                        {"P_T_W", r.P_T},
                        {"P_J_W", r.P_J},
                        {"tau_s", s.tau},
                        {"flags", r.flags}});
    }
    out.write("table1.csv", csv.text());
    const BeamCurrent j = jonsson_current(cfg.beam.current_density_mA_per_cm2, cfg.beam.slit_width_cm,
                                          cfg.beam.slit_height_cm, cfg.beam.n_slits, cfg.consts);
    out.write("table1.json", dump(with_schema("table1", {{"mode", mode_name(cfg.mode)},
                                                         {"constants", cfg.constants_name},
                                                         {"lambda_convention", kLambdaNote},
                                                         {"reference_rate_e_per_s", kReferenceRate},
                                                         {"jonsson_rate_e_per_s", j.electrons_per_second},
                                                         {"rows", rows}})));
}

void write_detectability(const RunConfig& cfg, OutputSet& out) {
    const Detectability d = detectability(cfg);
    const double ratio = d.flux.beam_flux / kQuotedBeamFlux;
    out.write("detectability.json",
              dump(with_schema("detectability",
                               {{"beam", {{"label", beam_label_name(d.beam.label)},
                                          {"electrons_per_second", d.beam.electrons_per_second},
                                          {"amperes", d.beam.amperes}}},
                                {"power_single_W", d.power_single_W},
                                {"power_scaled_W", d.power_scaled_W},
                                {"beam_flux_W_per_m2", d.flux.beam_flux},
                                {"cmbr_flux_W_per_m2", d.flux.cmbr_flux},
                                {"temperature_K", d.temperature_K},
                                {"patch_width_m", d.flux.patch_width},
                                {"patch_height_m", d.flux.patch_height},
                                {"quoted_beam_flux_W_per_m2", kQuotedBeamFlux},
                                {"derived_to_quoted_ratio", ratio},
                                {"discrepancy_flagged", std::abs(ratio - 1.0) > 0.03},
                                {"note", "beam_flux = P / (width * height); the quoted figure is not reproduced by "
                                         "this patch and power"}})));
}

void write_compare(const RunConfig& cfg, OutputSet& out) {
    const Comparison c = compare(cfg);
    Csv csv({"valley", "copenhagen_W", "bdb_W"});
    json rows = json::array();
    for (const auto& r : c.rows) {
        csv.row({static_cast<double>(r.valley), r.copenhagen_W, r.bdb_W});
        rows.push_back({{"valley", r.valley}, {"copenhagen_W", r.copenhagen_W}, {"bdb_W", r.bdb_W}});
    }
    out.write("compare.csv", csv.text());
    out.write("compare.json",
              dump(with_schema("compare", {{"mode", mode_name(cfg.mode)},
                                           {"constants", cfg.constants_name},
                                           {"rows", rows},
                                           {"copenhagen_ensemble_W", c.copenhagen_ensemble_W},
                                           {"ensemble_mean", {{"t_s", cfg.experiment.time_at_section()},
                                                              {"mean_gradQ_eV_per_cm", c.ensemble.mean_grad_q},
                                                              {"max_abs_gradQ_eV_per_cm", c.ensemble.max_abs_grad_q},
                                                              {"power_W", c.ensemble.power_W},
                                                              {"boundary_mass", c.ensemble.boundary_mass}}}})));
}

}  // namespace

const std::vector<Subcommand>& all_subcommands() {
    static const std::vector<Subcommand> all{Subcommand::quantum_potential, Subcommand::simulate_trajectories,
                                             Subcommand::valley_report,     Subcommand::spectrum,
                                             Subcommand::table1,            Subcommand::detectability,
                                             Subcommand::compare};
    return all;
}

std::string subcommand_name(Subcommand s) {
    switch (s) {
        case Subcommand::quantum_potential: return "quantum-potential";
        case Subcommand::simulate_trajectories: return "simulate-trajectories";
        case Subcommand::valley_report: return "valley-report";
        case Subcommand::spectrum: return "spectrum";
        case Subcommand::table1: return "table1";
        case Subcommand::detectability: return "detectability";
        case Subcommand::compare: return "compare";
    }
    return "";
}

std::optional<Subcommand> parse_subcommand(std::string_view name) {
    for (Subcommand s : all_subcommands()) {
        if (subcommand_name(s) == name) return s;
    }
    return std::nullopt;
}

std::vector<ValleyInput> valley_inputs(const RunConfig& cfg) {
    if (cfg.mode == Mode::reproduction) return cfg.valleys;
    const WaveField field(cfg.experiment, cfg.consts);
    const CrossSection cs = section(cfg, field);
    std::vector<ValleyInput> out;
    for (const Valley& v : cs.valleys) {
        if (v.y_min < 0.0) continue;
        ValleyInput in;
        in.valley_index = v.index;
        in.grad_q = v.grad_estimate;
        in.v0 = cfg.simulation_v0;
        in.dy = v.half_width;
        out.push_back(in);
    }
    if (out.empty()) throw NumericalError("simulation mode: " + cs.diagnostic);
    return out;
}

const std::vector<QuotedRow>& quoted_table() {
    static const std::vector<QuotedRow> rows{
        {1, 3.57e10, 0.84, 1.63e-27, 3.25e-25, 1.82e-17},
        {2, 1.43e10, 2.1, 1.03e-27, 3.27e-26, 1.83e-18},
        {3, 9.8e9, 3.06, 2e-28, 3.02e-27, 1.70e-19},
        {4, 9.17e9, 3.27, 1.69e-28, 2.23e-27, 1.25e-20},
    };
    return rows;
}

std::vector<Table1Row> table1_rows(const RunConfig& cfg) {
    const BeamCurrent j = jonsson_current(cfg.beam.current_density_mA_per_cm2, cfg.beam.slit_width_cm,
                                          cfg.beam.slit_height_cm, cfg.beam.n_slits, cfg.consts);
    const BeamCurrent t = tonomura_current(cfg.consts);
    std::vector<Table1Row> rows;
    for (const ValleyInput& v : valley_inputs(cfg)) {
        Table1Row r;
        r.step = spectrum_step(cfg.consts, v);
        r.P_T = current_scaled_power(r.step.power_W, t);
        r.P_J = current_scaled_power(r.step.power_W, j);
        if (cfg.mode == Mode::reproduction) {
            for (const QuotedRow& q : quoted_table()) {
                if (q.valley != v.valley_index) continue;
                auto check = [&](const char* col, double got, double quoted) {
                    if (std::abs(got - quoted) > 0.03 * std::abs(quoted)) {
                        r.flags.push_back(fmt::format("{} differs from the quoted {} by a factor {:.3g}", col,
                                                      format_number(quoted), got / quoted));
                    }
                };
                check("omega_c", r.step.omega_c, q.omega_c);
                check("lambda_c", r.step.lambda_c, q.lambda_c);
                check("I0", r.step.I0, q.I0);
                check("P_T", r.P_T, q.P_T);
                check("P_J", r.P_J, q.P_J);
            }
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

Comparison compare(const RunConfig& cfg) {
    Comparison c;
    for (const ValleyInput& v : valley_inputs(cfg)) {
        ComparisonRow r;
        r.valley = v.valley_index;
        r.copenhagen_W = copenhagen_emission_power();
        r.bdb_W = emission_power_from_gradQ(cfg.consts, v.grad_q);
        c.rows.push_back(r);
    }
    const WaveField field(cfg.experiment, cfg.consts);
    const double t = cfg.experiment.time_at_section();
    const double L = density_half_range(field, t);
    c.ensemble = ensemble_mean_power(field, t, -L, L);
    c.copenhagen_ensemble_W = copenhagen_emission_power();
    return c;
}

Detectability detectability(const RunConfig& cfg) {
    Detectability d;
    d.beam = jonsson_current(cfg.beam.current_density_mA_per_cm2, cfg.beam.slit_width_cm, cfg.beam.slit_height_cm,
                             cfg.beam.n_slits, cfg.consts);
    const std::vector<ValleyInput> valleys = valley_inputs(cfg);
    const auto first = std::min_element(valleys.begin(), valleys.end(),
                                        [](const auto& a, const auto& b) { return a.valley_index < b.valley_index; });
    d.power_single_W = emission_power_from_gradQ(cfg.consts, first->grad_q);
    d.power_scaled_W = current_scaled_power(d.power_single_W, d.beam);
    d.flux = beam_flux(d.power_scaled_W, cfg.detectability.patch_width_m, cfg.detectability.patch_height_m);
    d.flux.cmbr_flux = cmbr_flux(cfg.detectability.temperature_K);
    d.temperature_K = cfg.detectability.temperature_K;
    return d;
}

std::string manifest_json(const RunManifest& m) {
    json files = json::array();
    for (const auto& f : m.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    json j = {{"tool", m.tool},
              {"version", m.version},
              {"subcommand", m.subcommand},
              {"config_sha256", m.config_sha256},
              {"constants", m.constants},
              {"mode", m.mode},
              {"started_utc", m.started_utc},
              {"finished_utc", m.finished_utc},
              {"complete", m.complete},
              {"files", files}};
    if (!m.error.empty()) j["error"] = m.error;
    return dump(with_schema("manifest", j));
}

RunManifest run(Subcommand sub, const RunConfig& cfg) {
    validate(cfg);
    RunManifest m;
    m.subcommand = subcommand_name(sub);
    m.config_sha256 = sha256_text(canonical_json(cfg));
    m.constants = cfg.constants_name;
    m.mode = mode_name(cfg.mode);
    m.started_utc = utc_now();

    OutputSet out(cfg.output_dir);
    auto finish = [&] {
        m.files = out.files();
        m.finished_utc = utc_now();
        write_file(out.dir() / "manifest.json", manifest_json(m));
    };
    try {
        out.write("config.json", dump(json::parse(canonical_json(cfg))));
        switch (sub) {
            case Subcommand::quantum_potential: write_quantum_potential(cfg, out); break;
            case Subcommand::simulate_trajectories: write_trajectories(cfg, out); break;
            case Subcommand::valley_report: write_valley_report(cfg, out); break;
            case Subcommand::spectrum: write_spectrum(cfg, out); break;
            case Subcommand::table1: write_table1(cfg, out); break;
            case Subcommand::detectability: write_detectability(cfg, out); break;
            case Subcommand::compare: write_compare(cfg, out); break;
        }
    } catch (const std::exception& e) {
        m.complete = false;
        m.error = e.what();
        finish();
        throw;
    }
    m.complete = true;
    finish();
    return m;
}

}  // namespace bohm
