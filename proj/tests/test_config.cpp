#include "doctest.h"

#include <filesystem>
#include <string>

#include "bohm/config.hpp"
#include "bohm/errors.hpp"
#include "support.hpp"

using namespace bohm;
using testsupport::rel_err;

TEST_CASE("empty config resolves to the calibrated defaults") {
    const RunConfig c = parse_config("{}");
    CHECK(c.constants_name == "paper");
    CHECK(c.mode == Mode::reproduction);
    CHECK(c.experiment.slit_half_separation == 1.43e-4);
    CHECK(c.experiment.packet_width == 0.07e-4);
    CHECK(c.experiment.kinetic_energy == 45e3);
    CHECK(c.experiment.screen_distance == 35.0);
    CHECK(c.experiment.cross_section_x == 18.0);
    CHECK(rel_err(c.experiment.forward_speed, forward_speed_from_energy(45e3, kPaperConstants)) < 1e-15);
    REQUIRE(c.valleys.size() == 4);
    CHECK(c.valleys[0].grad_q == 9.66);
    CHECK(c.valleys[1].tau.value() == 7.01e-11);
    CHECK(c.trajectories.y0.size() == 4);
    CHECK(c.ensemble.n == 10000);
    CHECK(rel_err(c.ensemble_t_end(), c.experiment.time_at_screen()) < 1e-15);
    CHECK(canonical_json(c) == canonical_json(default_config()));
}

TEST_CASE("presets and modes") {
    const RunConfig c = parse_config(R"({"constants": "modern", "mode": "simulation"})");
    CHECK(c.constants_name == "modern");
    CHECK(c.consts.hbar == kModernConstants.hbar);
    CHECK(c.mode == Mode::simulation);
    CHECK(rel_err(c.experiment.forward_speed, forward_speed_from_energy(45e3, kModernConstants)) < 1e-15);

    RunConfig d = default_config();
    set_constants(d, "modern");
    CHECK(rel_err(d.experiment.forward_speed, c.experiment.forward_speed) < 1e-15);
    CHECK_THROWS_AS(set_constants(d, "cgs"), ConfigError);
}

TEST_CASE("valley lists") {
    const RunConfig c = parse_config(R"({"valleys": [
        {"gradQ_eV_per_cm": 2.0, "v0_cm_s": 1e4, "dy_cm": 2e-5},
        {"index": 7, "gradQ_eV_per_cm": 1.0, "tau_s": 1e-10}]})");
    REQUIRE(c.valleys.size() == 2);
    CHECK(c.valleys[0].valley_index == 1);
    CHECK(c.valleys[0].dy.value() == 2e-5);
    CHECK_FALSE(c.valleys[0].tau.has_value());
    CHECK(c.valleys[1].valley_index == 7);

    CHECK_THROWS_AS((void)parse_config(R"({"valleys": [{"gradQ_eV_per_cm": 1, "dy_cm": 1e-5, "tau_s": 1e-10}]})"),
                    SchemaError);
    CHECK_THROWS_AS((void)parse_config(R"({"valleys": [{"dy_cm": 1e-5}]})"), SchemaError);
    CHECK_THROWS_AS((void)parse_config(R"({"valleys": [{"gradQ_eV_per_cm": -1, "tau_s": 1e-10}]})"), PhysicsError);
    CHECK_THROWS_AS((void)parse_config(R"({"valleys": [{"gradQ_eV_per_cm": 0, "dy_cm": 1e-5}]})"), PhysicsError);
}

TEST_CASE("unknown keys and wrong types name the field") {
    try {
        (void)parse_config(R"({"experiment": {"slit_width": 1}})");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.field() == "experiment.slit_width");
        CHECK(e.exit_code() == ExitCode::config_schema);
    }
    try {
        (void)parse_config(R"({"ensemble": {"n": "many"}})");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.field() == "ensemble.n");
    }
    CHECK_THROWS_AS((void)parse_config(R"({"mode": "fast"})"), SchemaError);
    CHECK_THROWS_AS((void)parse_config(R"({"ensemble": {"n": 10}})"), SchemaError);
    CHECK_THROWS_AS((void)parse_config(R"([1, 2])"), SchemaError);
}

TEST_CASE("physics violations are rejected") {
    try {
        (void)parse_config(R"({"experiment": {"kinetic_energy_eV": 200000}})");
        FAIL("expected PhysicsError");
    } catch (const PhysicsError& e) {
        CHECK(std::string(e.what()).find("kinetic_energy_eV") != std::string::npos);
        CHECK(e.exit_code() == ExitCode::config_physics);
    }
    CHECK_THROWS_AS((void)parse_config(R"({"experiment": {"packet_width_cm": -1e-5}})"), PhysicsError);
    CHECK_THROWS_AS((void)parse_config(R"({"trajectories": {"y0_cm": [1.0]}})"), PhysicsError);
    CHECK_THROWS_AS((void)parse_config(R"({"trajectories": {"tol": 0}})"), PhysicsError);
    CHECK_THROWS_AS((void)parse_config(R"({"detectability": {"temperature_K": 0}})"), PhysicsError);
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        (void)parse_config("{\n  \"mode\": \"reproduction\",\n  \"constants\": }", "cfg.json");
        FAIL("expected ConfigError");
    } catch (const SchemaError&) {
        FAIL("parse error reported as a schema error");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.rfind("cfg.json:3:", 0) == 0);
        CHECK(e.exit_code() == ExitCode::config_parse);
    }
}

TEST_CASE("canonical JSON round-trips") {
    RunConfig c = parse_config(R"({"constants": "modern", "ensemble": {"n": 500, "seed": 9, "workers": 2},
                                  "scan": {"n_samples": 801, "half_range_cm": 1e-3}, "output_dir": "x/y"})");
    const std::string text = canonical_json(c);
    const RunConfig back = parse_config(text);
    CHECK(canonical_json(back) == text);
    CHECK(back.ensemble.seed == 9);
    CHECK(back.scan.half_range.value() == 1e-3);
    CHECK(back.output_dir == std::filesystem::path("x/y"));
}

TEST_CASE("missing config file is an I/O error") {
    CHECK_THROWS_AS((void)load_config("/nonexistent/config.json"), IoError);
}
