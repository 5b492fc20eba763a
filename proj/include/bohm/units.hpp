#pragma once

#include <string>
#include <string_view>

namespace bohm {

enum class ConstantsPreset { paper, modern };

/// Physical constants in the internal unit system: CGS lengths and times,
/// energies in eV. SI values (e, h, eV->J) are kept for I/O conversions.
struct PhysicalConstants {
    ConstantsPreset preset;
    double hbar;                  // eV s
    double c;                     // cm/s
    double electron_rest_energy;  // eV (m c^2)
    double alpha;
    double electron_charge;  // C
    double planck_h;         // J s
    double ev_to_joule;      // J/eV

    /// Electron mass in eV s^2 / cm^2, so that gradQ [eV/cm] / m gives cm/s^2.
    [[nodiscard]] constexpr double electron_mass() const noexcept {
        return electron_rest_energy / (c * c);
    }
    /// (4/3) alpha hbar / c^2 in eV s^3 / cm^2.
    [[nodiscard]] constexpr double larmor_prefactor() const noexcept {
        return 4.0 / 3.0 * alpha * hbar / (c * c);
    }
};

inline constexpr PhysicalConstants kPaperConstants{
    ConstantsPreset::paper, 0.65e-15, 3e10, 0.511e6, 1.0 / 137.0, 1.6022e-19, 6.63e-34, 1.6022e-19,
};

// CODATA 2018.
inline constexpr PhysicalConstants kModernConstants{
    ConstantsPreset::modern, 6.582119569e-16, 2.99792458e10, 0.51099895000e6, 7.2973525693e-3,
    1.602176634e-19,         6.62607015e-34,  1.602176634e-19,
};

/// Stefan-Boltzmann constant in W m^-2 K^-4, shared by both presets.
inline constexpr double kStefanBoltzmann = 5.670374419e-8;

/// Throws ConfigError for names other than "paper" and "modern".
[[nodiscard]] PhysicalConstants constants(std::string_view preset);
[[nodiscard]] PhysicalConstants constants(ConstantsPreset preset) noexcept;
[[nodiscard]] std::string_view preset_name(ConstantsPreset preset) noexcept;

enum class Unit {
    eV,
    J,
    eV_per_cm,
    cm,
    m,
    cm_per_s,
    cm_per_s2,
    s,
    Hz,
    W,
    erg_per_s,
    eV_per_s,
    eV_per_Hz,
    J_per_Hz,
    W_per_m2,
    electrons_per_s,
    A,
};

[[nodiscard]] std::string_view unit_symbol(Unit u) noexcept;

/// A value tagged with its unit. Mixing tags without convert() throws UnitError.
struct Quantity {
    double value = 0.0;
    Unit unit = Unit::eV;

    friend Quantity operator+(const Quantity& a, const Quantity& b);
    friend Quantity operator-(const Quantity& a, const Quantity& b);
    friend Quantity operator*(double k, const Quantity& q) { return {k * q.value, q.unit}; }
    friend Quantity operator*(const Quantity& q, double k) { return {k * q.value, q.unit}; }
    friend Quantity operator/(const Quantity& q, double k) { return {q.value / k, q.unit}; }
    /// Ratio of two like-tagged quantities.
    friend double operator/(const Quantity& a, const Quantity& b);
    friend bool operator<(const Quantity& a, const Quantity& b);
};

/// Rescales q into target. The eV<->J and e-/s<->A factors come from consts.
[[nodiscard]] Quantity convert(const Quantity& q, Unit target,
                               const PhysicalConstants& consts = kPaperConstants);

}  // namespace bohm
