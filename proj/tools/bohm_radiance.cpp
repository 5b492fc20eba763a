#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bohm/config.hpp"
#include "bohm/errors.hpp"
#include "bohm/run.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
            throw bohm::SchemaError("--y0-list", "not a number: \"" + item + "\"");
        }
        out.push_back(v);
    }
    return out;
}

std::string describe(bohm::Subcommand s) {
    using bohm::Subcommand;
    switch (s) {
        case Subcommand::quantum_potential: return "R, S, Q and dQ/dy across the cross-section, plus its valleys";
        case Subcommand::simulate_trajectories: return "Bohmian paths with radiated energy, and the equivariance ensemble";
        case Subcommand::valley_report: return "valleys of Q at the cross-section";
        case Subcommand::spectrum: return "per-valley step spectra and photon estimates";
        case Subcommand::table1: return "cutoff, wavelength, I(0) and beam-scaled powers per valley";
        case Subcommand::detectability: return "beam flux against the CMBR flux";
        case Subcommand::compare: return "zero standard-theory emission against per-valley and ensemble Bohmian emission";
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Emission predictions for the electron double-slit experiment: quantum potential, "
                 "Bohmian trajectories and per-valley radiation spectra."};
    app.set_version_flag("--version", std::string(bohm::kToolName) + " " + bohm::kToolVersion);
    app.require_subcommand(1, 1);

    std::string config_path, constants, mode, out_dir, y0_list;
    int n = 0;
    long long seed = -1;
    double t_end = -1.0;

    for (bohm::Subcommand s : bohm::all_subcommands()) {
        CLI::App* sub = app.add_subcommand(bohm::subcommand_name(s), describe(s));
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--constants", constants, "constant preset")->check(CLI::IsMember({"paper", "modern"}));
        sub->add_option("--mode", mode, "valley inputs: quoted (reproduction) or field-derived (simulation)")
            ->check(CLI::IsMember({"reproduction", "simulation"}));
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--n", n, "ensemble size")->check(CLI::Range(100, 100000000));
        sub->add_option("--seed", seed, "ensemble seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--t-end", t_end, "integration end time in s")->check(CLI::NonNegativeNumber);
        sub->add_option("--y0-list", y0_list, "comma-separated trajectory starts in cm");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(bohm::ExitCode::config_parse);
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const bohm::Subcommand sub = *bohm::parse_subcommand(chosen->get_name());
    try {
        bohm::RunConfig cfg = config_path.empty() ? bohm::default_config() : bohm::load_config(config_path);
        if (!constants.empty()) bohm::set_constants(cfg, constants);
        if (!mode.empty()) cfg.mode = mode == "simulation" ? bohm::Mode::simulation : bohm::Mode::reproduction;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (n != 0) cfg.ensemble.n = n;
        if (seed >= 0) cfg.ensemble.seed = static_cast<std::uint64_t>(seed);
        if (t_end >= 0.0) cfg.ensemble.t_end = t_end;
        if (!y0_list.empty()) cfg.trajectories.y0 = parse_list(y0_list);
        bohm::validate(cfg);

        const bohm::RunManifest m = bohm::run(sub, cfg);
        std::printf("%s: wrote %zu files to %s\n", m.subcommand.c_str(), m.files.size() + 1,
                    cfg.output_dir.string().c_str());
        return 0;
    } catch (const bohm::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
