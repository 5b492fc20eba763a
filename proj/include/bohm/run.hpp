#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bohm/config.hpp"
#include "bohm/output.hpp"
#include "bohm/presets.hpp"
#include "bohm/radiance.hpp"

namespace bohm {

inline constexpr const char* kToolName = "bohm-radiance";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Subcommand {
    quantum_potential,
    simulate_trajectories,
    valley_report,
    spectrum,
    table1,
    detectability,
    compare,
};

[[nodiscard]] const std::vector<Subcommand>& all_subcommands();
[[nodiscard]] std::string subcommand_name(Subcommand s);
[[nodiscard]] std::optional<Subcommand> parse_subcommand(std::string_view name);

struct RunManifest {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    std::string subcommand;
    std::string config_sha256;
    std::string constants;
    std::string mode;
    std::string started_utc;
    std::string finished_utc;
    bool complete = false;
    std::string error;  // empty on success
    std::vector<OutputFile> files;
};

/// Valley inputs for the configured mode: the configured list in reproduction
/// mode, the positive-side valleys of the 18 cm (cross_section_x) section in
/// simulation mode, each crossed from the border speed simulation_v0.
[[nodiscard]] std::vector<ValleyInput> valley_inputs(const RunConfig& cfg);

struct Table1Row {
    SpectrumStep step;
    double P_T = 0.0;  // W at the 10^3 e-/s reference
    double P_J = 0.0;  // W at the configured Jonsson beam
    std::vector<std::string> flags;
};

/// Quoted cutoff, wavelength, I(0), P_T and P_J of the reference table (valleys 1-4).
struct QuotedRow {
    int valley;
    double omega_c, lambda_c, I0, P_T, P_J;
};
[[nodiscard]] const std::vector<QuotedRow>& quoted_table();

[[nodiscard]] std::vector<Table1Row> table1_rows(const RunConfig& cfg);

struct ComparisonRow {
    int valley = 0;
    double copenhagen_W = 0.0;
    double bdb_W = 0.0;
};
struct Comparison {
    std::vector<ComparisonRow> rows;
    EnsembleMeanPower ensemble;  // under rho = |psi|^2 at the cross-section time
    double copenhagen_ensemble_W = 0.0;
};
[[nodiscard]] Comparison compare(const RunConfig& cfg);

/// Beam flux of the valley-1 power at the configured beam and patch.
struct Detectability {
    BeamCurrent beam;
    double power_single_W = 0.0;
    double power_scaled_W = 0.0;
    FluxComparison flux;
    double temperature_K = 0.0;
};
[[nodiscard]] Detectability detectability(const RunConfig& cfg);
inline constexpr double kQuotedBeamFlux = kPrintedBeamFlux;

/// Executes one subcommand, writing its data files and manifest.json into
/// cfg.output_dir. On failure the manifest is still written (complete = false,
/// with the error text) and the error is rethrown.
RunManifest run(Subcommand sub, const RunConfig& cfg);

/// JSON text of a manifest (also what run() writes).
[[nodiscard]] std::string manifest_json(const RunManifest& m);

}  // namespace bohm
