#pragma once

#include <string>

#include "bohm/units.hpp"

namespace bohm {

/// Reference rate for single-electron powers: one electron at a time, 10^3 e-/s.
inline constexpr double kReferenceRate = 1e3;

enum class BeamLabel { tonomura, jonsson, custom };

struct BeamCurrent {
    BeamLabel label = BeamLabel::custom;
    double electrons_per_second = 0.0;
    double amperes = 0.0;
};

[[nodiscard]] std::string beam_label_name(BeamLabel label);

/// Builds a beam from a rate; amperes follow from the electron charge.
[[nodiscard]] BeamCurrent beam_from_rate(double electrons_per_second, BeamLabel label,
                                         const PhysicalConstants& consts = kPaperConstants);

[[nodiscard]] BeamCurrent tonomura_current(const PhysicalConstants& consts = kPaperConstants);

/// rate = j S / e with S = n_slits * width * height.
/// j in mA/cm^2, slit dimensions in cm.
[[nodiscard]] BeamCurrent jonsson_current(double j_mA_per_cm2, double slit_width, double slit_height,
                                          int n_slits, const PhysicalConstants& consts = kPaperConstants);

/// Jonsson preset: 30 mA/cm^2 through two 0.3 um x 50 um slits.
[[nodiscard]] BeamCurrent jonsson_current(const PhysicalConstants& consts = kPaperConstants);

/// Scales a power computed at the 10^3 e-/s reference to the beam's rate.
[[nodiscard]] double current_scaled_power(double power_single_W, const BeamCurrent& beam);

/// Stefan-Boltzmann flux sigma T^4 in W/m^2.
[[nodiscard]] double cmbr_flux(double temperature_K);

inline constexpr double kCmbrTemperature = 2.73;

struct FluxComparison {
    double beam_flux = 0.0;  // W/m^2
    double cmbr_flux = 0.0;  // W/m^2
    double patch_width = 0.0;   // m
    double patch_height = 0.0;  // m
};

/// Default patch: one fringe separation (7000 Angstrom) wide, ten high.
inline constexpr double kDefaultPatchWidth = 7e-7;
inline constexpr double kDefaultPatchHeight = 7e-6;
/// The flux quoted in the original detectability estimate, kept for side-by-side output.
inline constexpr double kPrintedBeamFlux = 1.85e-6;

[[nodiscard]] FluxComparison beam_flux(double power_W, double patch_width = kDefaultPatchWidth,
                                       double patch_height = kDefaultPatchHeight);

}  // namespace bohm
