#include "doctest.h"

#include "bohm/errors.hpp"
#include "bohm/presets.hpp"
#include "support.hpp"

using namespace bohm;
using testsupport::rel_err;

TEST_CASE("tonomura reference beam") {
    const BeamCurrent b = tonomura_current();
    CHECK(b.electrons_per_second == 1e3);
    CHECK(b.amperes == doctest::Approx(1.6e-16).epsilon(0.002));
    CHECK(rel_err(b.amperes, b.electrons_per_second * 1.6022e-19) < 1e-6);
    const BeamCurrent back = beam_from_rate(convert({b.amperes, Unit::A}, Unit::electrons_per_s).value, BeamLabel::custom);
    CHECK(rel_err(back.electrons_per_second, 1e3) < 1e-6);
}

TEST_CASE("jonsson beam") {
    const BeamCurrent two = jonsson_current();
    CHECK(two.electrons_per_second == doctest::Approx(5.6e10).epsilon(0.01));
    CHECK(jonsson_current(30.0, 0.3e-4, 50e-4, 0).electrons_per_second == 0.0);
    const BeamCurrent one = jonsson_current(30.0, 0.3e-4, 50e-4, 1);
    CHECK(rel_err(one.electrons_per_second, 0.5 * two.electrons_per_second) < 1e-15);
    CHECK_THROWS_AS((void)jonsson_current(-1.0, 0.3e-4, 50e-4, 2), DomainError);
}

TEST_CASE("current scaling") {
    const BeamCurrent j = jonsson_current();
    CHECK(current_scaled_power(3.27e-26, j) == doctest::Approx(1.83e-18).epsilon(0.01));
    CHECK(current_scaled_power(3.25e-25, j) == doctest::Approx(1.82e-17).epsilon(0.01));
    CHECK(current_scaled_power(4.2e-26, tonomura_current()) == 4.2e-26);
    CHECK(rel_err(current_scaled_power(7.0 * 3e-26, j), 7.0 * current_scaled_power(3e-26, j)) < 1e-15);
}

TEST_CASE("CMBR and beam flux") {
    CHECK(cmbr_flux(2.73) == doctest::Approx(3.15e-6).epsilon(0.005));
    CHECK(rel_err(cmbr_flux(2 * 2.73), 16.0 * cmbr_flux(2.73)) < 1e-14);
    CHECK(cmbr_flux(1e-30) < 1e-120);
    CHECK_THROWS_AS((void)cmbr_flux(0.0), DomainError);

    const FluxComparison c = beam_flux(1.82e-17);
    CHECK(c.beam_flux == doctest::Approx(3.7e-6).epsilon(0.01));
    CHECK(c.cmbr_flux == cmbr_flux(kCmbrTemperature));
    CHECK(c.patch_width == 7e-7);
    CHECK(c.patch_height == 7e-6);
    CHECK(beam_flux(0.0).beam_flux == 0.0);
    CHECK(rel_err(beam_flux(1e-17, 7e-7, 1.4e-5).beam_flux, 0.5 * beam_flux(1e-17).beam_flux) < 1e-15);
    CHECK_THROWS_AS((void)beam_flux(1e-17, 0.0, 1.0), DomainError);
}
