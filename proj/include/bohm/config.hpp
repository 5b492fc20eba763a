#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bohm/radiance.hpp"
#include "bohm/units.hpp"
#include "bohm/wavefield.hpp"

namespace bohm {

/// reproduction: valley inputs are taken as given.
/// simulation: valley inputs are derived from the computed field.
enum class Mode { reproduction, simulation };

[[nodiscard]] std::string mode_name(Mode m);

struct EnsembleSettings {
    int n = 10000;
    std::uint64_t seed = 1;
    std::optional<double> t_end;  // s; defaults to the screen arrival time
    unsigned workers = 0;
};

struct TrajectorySettings {
    std::vector<double> y0;  // cm
    double tol = 1e-9;
};

struct ScanSettings {
    int n_samples = 4001;
    std::optional<double> half_range;  // cm; defaults to Y + 6 sigma_t
};

struct BeamSettings {
    double current_density_mA_per_cm2 = 30.0;
    double slit_width_cm = 0.3e-4;
    double slit_height_cm = 50e-4;
    int n_slits = 2;
};

struct DetectabilitySettings {
    double patch_width_m = 7e-7;
    double patch_height_m = 7e-6;
    double temperature_K = 2.73;
};

struct RunConfig {
    std::string constants_name = "paper";
    PhysicalConstants consts = kPaperConstants;
    Mode mode = Mode::reproduction;
    SlitExperiment experiment;
    std::vector<ValleyInput> valleys;
    double simulation_v0 = 1.5e4;  // cm/s, border speed for the closed-form valley path
    EnsembleSettings ensemble;
    TrajectorySettings trajectories;
    ScanSettings scan;
    BeamSettings beam;
    DetectabilitySettings detectability;
    std::filesystem::path output_dir = "out";

    [[nodiscard]] double ensemble_t_end() const { return ensemble.t_end.value_or(experiment.time_at_screen()); }
};

/// Reference valley inputs (gradQ, tau) for valleys 1-4.
[[nodiscard]] std::vector<ValleyInput> reference_valleys();

/// Calibrated Jonsson geometry, "paper" constant preset, reproduction mode.
[[nodiscard]] RunConfig default_config();

/// Parses and validates configuration text. `source` names the origin in diagnostics.
/// Throws ConfigError (malformed JSON, with line:column), SchemaError (unknown key
/// or wrong type, with the field path) or PhysicsError (violated invariant).
[[nodiscard]] RunConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Reads and parses a config file. Throws IoError if it cannot be read.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Re-checks every invariant after programmatic edits (e.g. CLI overrides).
void validate(const RunConfig& cfg);

/// Switches the constant preset, re-deriving the forward speed from the kinetic energy.
void set_constants(RunConfig& cfg, const std::string& name);

/// Canonical JSON text of a resolved config; the manifest hashes this.
[[nodiscard]] std::string canonical_json(const RunConfig& cfg);

}  // namespace bohm
