#pragma once

#include <map>
#include <optional>

#include "bohm/trajectory.hpp"
#include "bohm/units.hpp"
#include "bohm/wavefield.hpp"

namespace bohm {

/// Photon emission of the free electron between slits and screen in the
/// standard (operator) treatment: the acceleration operator of a free
/// Hamiltonian vanishes, so the rate is exactly zero.
[[nodiscard]] constexpr double copenhagen_emission_power() noexcept { return 0.0; }

/// P = (4/3)(alpha hbar / c^2) a^2, returned in W. `a` in cm/s^2.
[[nodiscard]] double emission_power(const PhysicalConstants& consts, double acceleration);
/// Same rate expressed through the quantum-potential gradient (eV/cm): a = gradQ / m.
[[nodiscard]] double emission_power_from_gradQ(const PhysicalConstants& consts, double grad_q);

/// Positive root of v0 tau + a tau^2 / 2 = dy. Throws DomainError unless
/// a > 0, dy > 0 and v0 >= 0.
[[nodiscard]] double collision_time(double v0, double acceleration, double dy);

struct PhotonEstimate {
    double energy_J;
    double frequency_Hz;
};
/// E = P tau and nu = E / h.
[[nodiscard]] PhotonEstimate photon_energy_frequency(const PhysicalConstants& consts, double power_W, double tau);

/// Per-valley inputs. Exactly one of dy (one-sided traversal distance, cm)
/// and tau (s) must be set.
struct ValleyInput {
    double grad_q = 0.0;  // eV/cm
    double v0 = 0.0;      // cm/s, transverse speed at the valley border
    std::optional<double> dy;
    std::optional<double> tau;
    int valley_index = 0;
};

/// Flat low-frequency emission spectrum of one valley crossing.
struct SpectrumStep {
    int valley_index = 0;
    double tau = 0.0;           // s, one acceleration leg
    double acceleration = 0.0;  // cm/s^2
    double delta_v = 0.0;       // cm/s
    double power_W = 0.0;
    double omega_c = 0.0;   // 1/s
    double lambda_c = 0.0;  // cm, c / omega_c
    double I0 = 0.0;        // eV/Hz
    double photon_energy_J = 0.0;
    double photon_frequency_Hz = 0.0;

    /// I(omega): I0 below the cutoff, zero at and above it.
    [[nodiscard]] double intensity(double omega) const noexcept { return omega < omega_c ? I0 : 0.0; }
};

/// Throws DomainError on an inconsistent ValleyInput.
[[nodiscard]] SpectrumStep spectrum_step(const PhysicalConstants& consts, const ValleyInput& input);

/// Order-of-magnitude photon energy alpha hbar (dv/c)^2 / dt, in eV.
[[nodiscard]] double heuristic_photon_energy(const PhysicalConstants& consts, double delta_v, double dt);

struct OverlapInput {
    double delta_p_over_m = 0.0;  // cm/s
    double d = 0.0;               // cm
};
struct OverlapResult {
    double exponent_magnitude;  // (dp)^2 d^2 / (4 hbar^2)
    double overlap;             // exp(-exponent_magnitude)
};
/// |<b|a>|^2 for two equal-width Gaussian momentum states.
[[nodiscard]] OverlapResult gaussian_overlap(const PhysicalConstants& consts, const OverlapInput& input);

/// sin^2(theta) about the acceleration (y) axis. Throws DomainError outside [0, pi].
[[nodiscard]] double angular_factor(double theta);

struct RadiatedEnergy {
    double total_J = 0.0;
    std::map<int, double> per_valley_J;  // key 0 collects time spent outside any valley
};

/// Trapezoidal integral of P(t) = (4/3)(alpha hbar/c^2) a_field(t)^2 along the path.
/// Throws NumericalError for a halted trajectory.
[[nodiscard]] RadiatedEnergy trajectory_radiated_energy(const PhysicalConstants& consts, const Trajectory& traj);
/// As above, with per-valley partial sums located on the cross-section of Q
/// at each interval's midpoint time.
[[nodiscard]] RadiatedEnergy trajectory_radiated_energy(const WaveField& field, const Trajectory& traj);

/// Index of the valley of Q(., t) whose flanking maxima bracket y; 0 if none.
[[nodiscard]] int valley_index_at(const WaveField& field, double y, double t);

struct EnsembleMeanPower {
    double mean_grad_q = 0.0;      // <dQ/dy> under rho = |psi|^2, eV/cm
    double max_abs_grad_q = 0.0;   // over the quadrature grid
    double mean_acceleration = 0.0;
    double power_W = 0.0;  // Larmor rate of the ensemble-mean acceleration
    double boundary_mass = 0.0;
};

/// Ensemble average of the emission under rho = |psi(., t)|^2 on [y_lo, y_hi].
/// Throws DomainError when more than 1e-6 of the mass lies outside the range.
[[nodiscard]] EnsembleMeanPower ensemble_mean_power(const WaveField& field, double t, double y_lo, double y_hi);

}  // namespace bohm
