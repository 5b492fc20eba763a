#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "bohm/units.hpp"
#include "bohm/wavefield.hpp"

namespace testsupport {

inline bohm::SlitExperiment calibrated() { return bohm::SlitExperiment::jonsson(bohm::kPaperConstants); }

/// Calibrated geometry with both packets merged on the axis.
inline bohm::SlitExperiment single_packet() {
    auto e = calibrated();
    e.slit_half_separation = 0.0;
    return e;
}

inline double rel_err(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

/// Textbook free Gaussian with rms width sigma0 for |psi|^2, centred at c.
inline std::complex<double> free_gaussian(double y, double c, double t, double sigma0, const bohm::PhysicalConstants& k) {
    const double m = k.electron_mass();
    const std::complex<double> a(1.0, k.hbar * t / (2.0 * m * sigma0 * sigma0));
    const double z = y - c;
    return std::exp(-z * z / (4.0 * sigma0 * sigma0 * a)) / std::sqrt(a);
}

}  // namespace testsupport
