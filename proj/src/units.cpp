#include "bohm/units.hpp"

#include "bohm/errors.hpp"

namespace bohm {

PhysicalConstants constants(std::string_view preset) {
    if (preset == "paper") return kPaperConstants;
    if (preset == "modern") return kModernConstants;
    throw ConfigError("unknown constants preset '" + std::string(preset) +
                      "' (expected 'paper' or 'modern')");
}

PhysicalConstants constants(ConstantsPreset preset) noexcept {
    return preset == ConstantsPreset::paper ? kPaperConstants : kModernConstants;
}

std::string_view preset_name(ConstantsPreset preset) noexcept {
    return preset == ConstantsPreset::paper ? "paper" : "modern";
}

std::string_view unit_symbol(Unit u) noexcept {
    switch (u) {
        case Unit::eV: return "eV";
        case Unit::J: return "J";
        case Unit::eV_per_cm: return "eV/cm";
        case Unit::cm: return "cm";
        case Unit::m: return "m";
        case Unit::cm_per_s: return "cm/s";
        case Unit::cm_per_s2: return "cm/s^2";
        case Unit::s: return "s";
        case Unit::Hz: return "Hz";
        case Unit::W: return "W";
        case Unit::erg_per_s: return "erg/s";
        case Unit::eV_per_s: return "eV/s";
        case Unit::eV_per_Hz: return "eV/Hz";
        case Unit::J_per_Hz: return "J/Hz";
        case Unit::W_per_m2: return "W/m^2";
        case Unit::electrons_per_s: return "e-/s";
        case Unit::A: return "A";
    }
    return "?";
}

namespace {

enum class Dimension { energy, power, spectral_energy, length, charge_rate, other };

struct UnitInfo {
    Dimension dim;
    double to_base;  // multiply to reach the SI base of the dimension
};

UnitInfo info(Unit u, const PhysicalConstants& k) {
    switch (u) {
        case Unit::eV: return {Dimension::energy, k.ev_to_joule};
        case Unit::J: return {Dimension::energy, 1.0};
        case Unit::W: return {Dimension::power, 1.0};
        case Unit::erg_per_s: return {Dimension::power, 1e-7};
        case Unit::eV_per_s: return {Dimension::power, k.ev_to_joule};
        case Unit::eV_per_Hz: return {Dimension::spectral_energy, k.ev_to_joule};
        case Unit::J_per_Hz: return {Dimension::spectral_energy, 1.0};
        case Unit::cm: return {Dimension::length, 1e-2};
        case Unit::m: return {Dimension::length, 1.0};
        case Unit::electrons_per_s: return {Dimension::charge_rate, k.electron_charge};
        case Unit::A: return {Dimension::charge_rate, 1.0};
        default: return {Dimension::other, 1.0};
    }
}

void require_same(const Quantity& a, const Quantity& b, const char* op) {
    if (a.unit != b.unit) {
        throw UnitError(std::string("cannot ") + op + " " + std::string(unit_symbol(a.unit)) +
                        " and " + std::string(unit_symbol(b.unit)) + " without conversion");
    }
}

}  // namespace

Quantity operator+(const Quantity& a, const Quantity& b) {
    require_same(a, b, "add");
    return {a.value + b.value, a.unit};
}

Quantity operator-(const Quantity& a, const Quantity& b) {
    require_same(a, b, "subtract");
    return {a.value - b.value, a.unit};
}

double operator/(const Quantity& a, const Quantity& b) {
    require_same(a, b, "divide");
    return a.value / b.value;
}

bool operator<(const Quantity& a, const Quantity& b) {
    require_same(a, b, "compare");
    return a.value < b.value;
}

Quantity convert(const Quantity& q, Unit target, const PhysicalConstants& consts) {
    if (q.unit == target) return q;
    const UnitInfo from = info(q.unit, consts);
    const UnitInfo to = info(target, consts);
    if (from.dim == Dimension::other || from.dim != to.dim) {
        throw UnitError("cannot convert " + std::string(unit_symbol(q.unit)) + " to " +
                        std::string(unit_symbol(target)));
    }
    return {q.value * from.to_base / to.to_base, target};
}

}  // namespace bohm
