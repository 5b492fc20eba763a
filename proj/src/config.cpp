#include "bohm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "bohm/errors.hpp"

namespace bohm {

using nlohmann::json;

namespace {

/// Checked access to one JSON object; rejects keys that are never read.
class Fields {
public:
    Fields(const json& obj, std::string path, std::set<std::string> allowed) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw SchemaError(where(), "expected an object");
        for (const auto& [key, _] : obj_.items()) {
            if (!allowed.contains(key)) throw SchemaError(join(key), "unknown key");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return obj_.contains(key); }

    [[nodiscard]] double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_number()) throw SchemaError(join(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw SchemaError(join(key), "expected a finite number");
        return d;
    }

    [[nodiscard]] std::optional<double> optional_number(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return number(key, 0.0);
    }

    [[nodiscard]] long long integer(const std::string& key, long long fallback, long long minimum) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_number_integer()) throw SchemaError(join(key), "expected an integer");
        const long long i = v.is_number_unsigned() ? static_cast<long long>(v.get<std::uint64_t>()) : v.get<long long>();
        if (i < minimum) throw SchemaError(join(key), "must be >= " + std::to_string(minimum));
        return i;
    }

    [[nodiscard]] std::string string(const std::string& key, const std::string& fallback,
                                     const std::set<std::string>& choices = {}) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_string()) throw SchemaError(join(key), "expected a string");
        std::string s = v.get<std::string>();
        if (!choices.empty() && !choices.contains(s)) {
            std::string list;
            for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
            throw SchemaError(join(key), "must be one of {" + list + "}, got \"" + s + "\"");
        }
        return s;
    }

    [[nodiscard]] const json& child(const std::string& key) const { return obj_.at(key); }
    [[nodiscard]] std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    [[nodiscard]] std::string where() const { return path_.empty() ? "<root>" : path_; }

    const json& obj_;
    std::string path_;
};

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void parse_experiment(const Fields& root, RunConfig& cfg) {
    cfg.experiment = SlitExperiment::jonsson(cfg.consts);
    if (!root.has("experiment")) return;
    const Fields f(root.child("experiment"), "experiment",
                   {"slit_half_separation_cm", "packet_width_cm", "kinetic_energy_eV", "forward_speed_cm_s",
                    "screen_distance_cm", "cross_section_x_cm"});
    SlitExperiment& e = cfg.experiment;
    e.slit_half_separation = f.number("slit_half_separation_cm", e.slit_half_separation);
    e.packet_width = f.number("packet_width_cm", e.packet_width);
    e.kinetic_energy = f.number("kinetic_energy_eV", e.kinetic_energy);
    e.forward_speed = f.number("forward_speed_cm_s", forward_speed_from_energy(e.kinetic_energy, cfg.consts));
    e.screen_distance = f.number("screen_distance_cm", e.screen_distance);
    e.cross_section_x = f.number("cross_section_x_cm", e.cross_section_x);
}

void parse_valleys(const Fields& root, RunConfig& cfg) {
    if (!root.has("valleys")) {
        cfg.valleys = reference_valleys();
        return;
    }
    const json& arr = root.child("valleys");
    if (!arr.is_array()) throw SchemaError("valleys", "expected an array");
    cfg.valleys.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "valleys[" + std::to_string(i) + "]";
        const Fields f(arr[i], path, {"index", "gradQ_eV_per_cm", "v0_cm_s", "dy_cm", "tau_s"});
        if (!f.has("gradQ_eV_per_cm")) throw SchemaError(f.join("gradQ_eV_per_cm"), "required");
        if (f.has("dy_cm") == f.has("tau_s")) throw SchemaError(path, "exactly one of dy_cm and tau_s is required");
        ValleyInput v;
        v.valley_index = static_cast<int>(f.integer("index", static_cast<long long>(i) + 1, 1));
        v.grad_q = f.number("gradQ_eV_per_cm", 0.0);
        v.v0 = f.number("v0_cm_s", 0.0);
        v.dy = f.optional_number("dy_cm");
        v.tau = f.optional_number("tau_s");
        cfg.valleys.push_back(v);
    }
}

void parse_sections(const Fields& root, RunConfig& cfg) {
    cfg.simulation_v0 = root.number("simulation_v0_cm_s", cfg.simulation_v0);
    if (root.has("ensemble")) {
        const Fields f(root.child("ensemble"), "ensemble", {"n", "seed", "t_end_s", "workers"});
        cfg.ensemble.n = static_cast<int>(f.integer("n", cfg.ensemble.n, 100));
        cfg.ensemble.seed = static_cast<std::uint64_t>(f.integer("seed", 1, 0));
        cfg.ensemble.t_end = f.optional_number("t_end_s");
        cfg.ensemble.workers = static_cast<unsigned>(f.integer("workers", 0, 0));
    }
    if (root.has("trajectories")) {
        const Fields f(root.child("trajectories"), "trajectories", {"y0_cm", "tol"});
        if (f.has("y0_cm")) {
            const json& arr = f.child("y0_cm");
            if (!arr.is_array()) throw SchemaError("trajectories.y0_cm", "expected an array");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                if (!arr[i].is_number()) throw SchemaError("trajectories.y0_cm[" + std::to_string(i) + "]", "expected a number");
                cfg.trajectories.y0.push_back(arr[i].get<double>());
            }
        }
        cfg.trajectories.tol = f.number("tol", cfg.trajectories.tol);
    }
    if (root.has("scan")) {
        const Fields f(root.child("scan"), "scan", {"n_samples", "half_range_cm"});
        cfg.scan.n_samples = static_cast<int>(f.integer("n_samples", cfg.scan.n_samples, 100));
        cfg.scan.half_range = f.optional_number("half_range_cm");
    }
    if (root.has("beam")) {
        const Fields f(root.child("beam"), "beam",
                       {"current_density_mA_per_cm2", "slit_width_cm", "slit_height_cm", "n_slits"});
        BeamSettings& b = cfg.beam;
        b.current_density_mA_per_cm2 = f.number("current_density_mA_per_cm2", b.current_density_mA_per_cm2);
        b.slit_width_cm = f.number("slit_width_cm", b.slit_width_cm);
        b.slit_height_cm = f.number("slit_height_cm", b.slit_height_cm);
        b.n_slits = static_cast<int>(f.integer("n_slits", b.n_slits, 0));
    }
    if (root.has("detectability")) {
        const Fields f(root.child("detectability"), "detectability",
                       {"patch_width_m", "patch_height_m", "temperature_K"});
        DetectabilitySettings& d = cfg.detectability;
        d.patch_width_m = f.number("patch_width_m", d.patch_width_m);
        d.patch_height_m = f.number("patch_height_m", d.patch_height_m);
        d.temperature_K = f.number("temperature_K", d.temperature_K);
    }
    cfg.output_dir = root.string("output_dir", cfg.output_dir.string());
}

std::vector<double> default_y0(const SlitExperiment& e) {
    const double Y = e.slit_half_separation, s = e.packet_width;
    return {0.5 * Y, Y - s, Y, Y + s};
}

}  // namespace

std::string mode_name(Mode m) { return m == Mode::reproduction ? "reproduction" : "simulation"; }

std::vector<ValleyInput> reference_valleys() {
    const double g[] = {9.66, 3.06, 0.93, 0.8};
    const double tau[] = {2.8e-11, 7.01e-11, 1.02e-10, 1.09e-10};
    std::vector<ValleyInput> out;
    for (int i = 0; i < 4; ++i) {
        ValleyInput v;
        v.valley_index = i + 1;
        v.grad_q = g[i];
        v.tau = tau[i];
        out.push_back(v);
    }
    return out;
}

RunConfig default_config() { return parse_config("{}"); }

RunConfig parse_config(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string what = e.what();
        // Drop nlohmann's "[json.exception.parse_error.101] parse error at line L, column C: " prefix.
        if (const auto p = what.find(": "); p != std::string::npos) what = what.substr(p + 2);
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
    }

    const Fields root(doc, "",
                      {"constants", "mode", "experiment", "valleys", "simulation_v0_cm_s", "ensemble",
                       "trajectories", "scan", "beam", "detectability", "output_dir"});
    RunConfig cfg;
    cfg.constants_name = root.string("constants", "paper", {"paper", "modern"});
    cfg.consts = constants(cfg.constants_name);
    cfg.mode = root.string("mode", "reproduction", {"reproduction", "simulation"}) == "simulation" ? Mode::simulation
                                                                                                   : Mode::reproduction;
    parse_experiment(root, cfg);
    parse_valleys(root, cfg);
    parse_sections(root, cfg);
    if (cfg.trajectories.y0.empty()) cfg.trajectories.y0 = default_y0(cfg.experiment);
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

void validate(const RunConfig& cfg) {
    validate(cfg.experiment, cfg.consts);
    auto fail = [](const std::string& what) { throw PhysicsError(what); };
    for (std::size_t i = 0; i < cfg.valleys.size(); ++i) {
        const ValleyInput& v = cfg.valleys[i];
        const std::string p = "valleys[" + std::to_string(i) + "]";
        if (!(v.grad_q >= 0.0)) fail(p + ".gradQ_eV_per_cm must be >= 0");
        if (!(v.v0 >= 0.0)) fail(p + ".v0_cm_s must be >= 0");
        if (v.dy && !(*v.dy > 0.0)) fail(p + ".dy_cm must be > 0");
        if (v.tau && !(*v.tau > 0.0)) fail(p + ".tau_s must be > 0");
        if (v.dy && v.grad_q == 0.0 && v.v0 == 0.0) fail(p + ": no motion across the valley (gradQ = v0 = 0)");
    }
    if (!(cfg.simulation_v0 >= 0.0)) fail("simulation_v0_cm_s must be >= 0");
    if (cfg.ensemble.n < 100) throw SchemaError("ensemble.n", "must be >= 100");
    if (cfg.ensemble.t_end && !(*cfg.ensemble.t_end >= 0.0)) fail("ensemble.t_end_s must be >= 0");
    if (!(cfg.trajectories.tol > 0.0 && cfg.trajectories.tol < 1e-2)) fail("trajectories.tol must lie in (0, 1e-2)");
    const double Y = cfg.experiment.slit_half_separation;
    for (std::size_t i = 0; i < cfg.trajectories.y0.size(); ++i) {
        const double y0 = cfg.trajectories.y0[i];
        if (!std::isfinite(y0) || y0 == 0.0) fail("trajectories.y0_cm[" + std::to_string(i) + "] must be finite and nonzero");
        if (std::abs(y0) > Y + 10.0 * cfg.experiment.packet_width) {
            fail("trajectories.y0_cm[" + std::to_string(i) + "] lies outside the initial packets");
        }
    }
    if (cfg.scan.n_samples < 100) throw SchemaError("scan.n_samples", "must be >= 100");
    if (cfg.scan.half_range && !(*cfg.scan.half_range > 0.0)) fail("scan.half_range_cm must be > 0");
    const BeamSettings& b = cfg.beam;
    if (!(b.current_density_mA_per_cm2 >= 0.0)) fail("beam.current_density_mA_per_cm2 must be >= 0");
    if (!(b.slit_width_cm > 0.0 && b.slit_height_cm > 0.0)) fail("beam slit dimensions must be > 0");
    if (b.n_slits < 0) throw SchemaError("beam.n_slits", "must be >= 0");
    const DetectabilitySettings& d = cfg.detectability;
    if (!(d.patch_width_m > 0.0 && d.patch_height_m > 0.0)) fail("detectability patch dimensions must be > 0");
    if (!(d.temperature_K > 0.0)) fail("detectability.temperature_K must be > 0");
    if (cfg.output_dir.empty()) throw SchemaError("output_dir", "must not be empty");
}

void set_constants(RunConfig& cfg, const std::string& name) {
    cfg.consts = constants(name);
    cfg.constants_name = name;
    cfg.experiment.forward_speed = forward_speed_from_energy(cfg.experiment.kinetic_energy, cfg.consts);
}

std::string canonical_json(const RunConfig& cfg) {
    const SlitExperiment& e = cfg.experiment;
    json j;
    j["constants"] = cfg.constants_name;
    j["mode"] = mode_name(cfg.mode);
    j["experiment"] = {{"slit_half_separation_cm", e.slit_half_separation},
                       {"packet_width_cm", e.packet_width},
                       {"kinetic_energy_eV", e.kinetic_energy},
                       {"forward_speed_cm_s", e.forward_speed},
                       {"screen_distance_cm", e.screen_distance},
                       {"cross_section_x_cm", e.cross_section_x}};
    json valleys = json::array();
    for (const ValleyInput& v : cfg.valleys) {
        json jv = {{"index", v.valley_index}, {"gradQ_eV_per_cm", v.grad_q}, {"v0_cm_s", v.v0}};
        if (v.dy) jv["dy_cm"] = *v.dy;
        if (v.tau) jv["tau_s"] = *v.tau;
        valleys.push_back(jv);
    }
    j["valleys"] = valleys;
    j["simulation_v0_cm_s"] = cfg.simulation_v0;
    j["ensemble"] = {{"n", cfg.ensemble.n}, {"seed", cfg.ensemble.seed}, {"t_end_s", cfg.ensemble_t_end()},
                     {"workers", cfg.ensemble.workers}};
    j["trajectories"] = {{"y0_cm", cfg.trajectories.y0}, {"tol", cfg.trajectories.tol}};
    j["scan"] = {{"n_samples", cfg.scan.n_samples}};
    if (cfg.scan.half_range) j["scan"]["half_range_cm"] = *cfg.scan.half_range;
    j["beam"] = {{"current_density_mA_per_cm2", cfg.beam.current_density_mA_per_cm2},
                 {"slit_width_cm", cfg.beam.slit_width_cm},
                 {"slit_height_cm", cfg.beam.slit_height_cm},
                 {"n_slits", cfg.beam.n_slits}};
    j["detectability"] = {{"patch_width_m", cfg.detectability.patch_width_m},
                          {"patch_height_m", cfg.detectability.patch_height_m},
                          {"temperature_K", cfg.detectability.temperature_K}};
    j["output_dir"] = cfg.output_dir.generic_string();
    return j.dump();
}

}  // namespace bohm
