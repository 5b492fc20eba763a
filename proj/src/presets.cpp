#include "bohm/presets.hpp"

#include <cmath>

#include "bohm/errors.hpp"

namespace bohm {

std::string beam_label_name(BeamLabel label) {
    switch (label) {
        case BeamLabel::tonomura: return "tonomura";
        case BeamLabel::jonsson: return "jonsson";
        case BeamLabel::custom: return "custom";
    }
    return "custom";
}

BeamCurrent beam_from_rate(double electrons_per_second, BeamLabel label, const PhysicalConstants& consts) {
    if (!(electrons_per_second >= 0.0)) throw DomainError("beam rate must be >= 0");
    const Quantity amps = convert({electrons_per_second, Unit::electrons_per_s}, Unit::A, consts);
    return {label, electrons_per_second, amps.value};
}

BeamCurrent tonomura_current(const PhysicalConstants& consts) {
    return beam_from_rate(kReferenceRate, BeamLabel::tonomura, consts);
}

BeamCurrent jonsson_current(double j_mA_per_cm2, double slit_width, double slit_height, int n_slits,
                            const PhysicalConstants& consts) {
    if (!(j_mA_per_cm2 >= 0.0 && slit_width >= 0.0 && slit_height >= 0.0 && n_slits >= 0)) {
        throw DomainError("jonsson_current: inputs must be non-negative");
    }
    const double area = n_slits * slit_width * slit_height;  // cm^2
    const double amps = j_mA_per_cm2 * 1e-3 * area;
    const double rate = convert({amps, Unit::A}, Unit::electrons_per_s, consts).value;
    return {BeamLabel::jonsson, rate, amps};
}

BeamCurrent jonsson_current(const PhysicalConstants& consts) {
    return jonsson_current(30.0, 0.3e-4, 50e-4, 2, consts);
}

double current_scaled_power(double power_single_W, const BeamCurrent& beam) {
    return power_single_W * (beam.electrons_per_second / kReferenceRate);
}

double cmbr_flux(double temperature_K) {
    if (!(temperature_K > 0.0)) throw DomainError("cmbr_flux: temperature must be > 0");
    const double t2 = temperature_K * temperature_K;
    return kStefanBoltzmann * t2 * t2;
}

FluxComparison beam_flux(double power_W, double patch_width, double patch_height) {
    if (!(power_W >= 0.0)) throw DomainError("beam_flux: power must be >= 0");
    if (!(patch_width > 0.0 && patch_height > 0.0)) throw DomainError("beam_flux: patch must have positive size");
    return {power_W / (patch_width * patch_height), cmbr_flux(kCmbrTemperature), patch_width, patch_height};
}

}  // namespace bohm
