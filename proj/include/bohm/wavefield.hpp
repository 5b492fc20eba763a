#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bohm/units.hpp"

namespace bohm {

/// Two-Gaussian-slit geometry and beam. Lengths in cm, energies in eV.
struct SlitExperiment {
    double slit_half_separation = 0.0;  // Y
    double packet_width = 0.0;          // sigma0, rms width of |psi|^2 at the slits
    double forward_speed = 0.0;         // v_x, cm/s
    double kinetic_energy = 0.0;        // eV
    double screen_distance = 0.0;       // D
    double cross_section_x = 0.0;       // x of the reported Q section

    /// Calibrated defaults for the Jonsson-like 45 keV setup.
    static SlitExperiment jonsson(const PhysicalConstants& consts);

    [[nodiscard]] double time_at(double x) const noexcept { return x / forward_speed; }
    [[nodiscard]] double time_at_screen() const noexcept { return time_at(screen_distance); }
    [[nodiscard]] double time_at_section() const noexcept { return time_at(cross_section_x); }
};

/// Non-relativistic v = c sqrt(2 T / mc^2).
[[nodiscard]] double forward_speed_from_energy(double kinetic_energy, const PhysicalConstants& consts);

/// Throws PhysicsError naming the violated invariant.
void validate(const SlitExperiment& exp, const PhysicalConstants& consts);

enum class SampleFlag { ok, node };

struct FieldSample {
    double y = 0.0;
    double t = 0.0;
    double psi_re = 0.0;
    double psi_im = 0.0;
    double R = 0.0;
    double S = 0.0;      // eV s
    double Q = 0.0;      // eV
    double gradQ = 0.0;  // eV/cm
    SampleFlag flag = SampleFlag::ok;
};

struct Valley {
    int index = 0;  // 1 for the valley nearest the symmetry axis; mirror pairs share it
    double y_min = 0.0;
    double y_left = 0.0;
    double y_right = 0.0;
    double depth = 0.0;       // dQ, eV
    double half_width = 0.0;  // dy, cm
    double grad_estimate = 0.0;
};

enum class GradientMethod { analytic, finite_difference };

/// Masked samples satisfy R < kNodeFloor * reference_amplitude(t).
inline constexpr double kNodeFloor = 1e-12;

/// Evaluator for psi, R, S, Q and dQ/dy of the post-slit superposition of
/// two freely spreading Gaussian packets centred at +-Y.
///
/// Everything except psi and R is computed from the logarithmic derivative
/// psi'/psi, so the overall normalisation (amplitude_scale) cancels and the
/// far tails never underflow.
class WaveField {
public:
    WaveField(const SlitExperiment& exp, const PhysicalConstants& consts, double amplitude_scale = 1.0);

    [[nodiscard]] const SlitExperiment& experiment() const noexcept { return exp_; }
    [[nodiscard]] const PhysicalConstants& consts() const noexcept { return consts_; }

    /// hbar t / (2 m sigma0^2)
    [[nodiscard]] double spreading(double t) const noexcept;
    [[nodiscard]] double sigma_t(double t) const noexcept;
    /// Wavenumber of the interference fringes, Y tau / sigma_t^2 (1/cm).
    [[nodiscard]] double fringe_wavenumber(double t) const noexcept;
    /// Smallest structural length at time t: min(sigma_t, 1/k_fringe).
    [[nodiscard]] double local_scale(double t) const noexcept;
    /// Step used by the finite-difference routes.
    [[nodiscard]] double fd_step(double t) const noexcept;

    [[nodiscard]] std::complex<double> psi(double y, double t) const;
    /// max(R(0,t), R(Y,t)); stands in for the global maximum of R at t.
    [[nodiscard]] double reference_amplitude(double t) const;
    [[nodiscard]] bool is_node(double y, double t) const;

    struct Polar {
        double R;
        double S;  // principal value of hbar arg(psi); NaN at a node
        bool defined;
    };
    [[nodiscard]] Polar amplitude_phase(double y, double t) const;

    /// dS/dy in eV s / cm. Throws NumericalError at a node.
    [[nodiscard]] double phase_gradient(double y, double t) const;
    /// d^2R/dy^2 in the same (un-normalised) units as R. The finite-difference
    /// route differences R in extended precision.
    [[nodiscard]] double amplitude_curvature(double y, double t,
                                             GradientMethod method = GradientMethod::analytic) const;
    /// Q = -(hbar^2/2m) R''/R, eV. Throws NumericalError at a node.
    [[nodiscard]] double quantum_potential(double y, double t) const;
    /// dQ/dy in eV/cm. Throws NumericalError at a node.
    [[nodiscard]] double grad_quantum_potential(double y, double t,
                                                GradientMethod method = GradientMethod::analytic) const;

    /// Full sample; node samples carry flag == node and NaN for S, Q, gradQ.
    [[nodiscard]] FieldSample sample(double y, double t) const;

    /// Quantities derived from psi'/psi at one point.
    struct Local {
        double log_R;
        double phase;                 // arg(psi) in (-pi, pi]
        std::complex<double> u;       // psi'/psi
        std::complex<double> du;      // d/dy (psi'/psi)
        std::complex<double> d2u;     // d^2/dy^2 (psi'/psi)
        std::complex<double> psi;     // may underflow to 0 in the far tails
    };
    [[nodiscard]] Local local(double y, double t) const;
    [[nodiscard]] bool is_node(const Local& l, double t) const { return masked(l, t); }
    /// Q and dQ/dy from precomputed local data, without the node mask.
    [[nodiscard]] double quantum_potential(const Local& l) const noexcept { return q_from(l); }
    [[nodiscard]] double grad_quantum_potential(const Local& l) const noexcept { return grad_q_from(l); }

private:
    [[nodiscard]] double q_from(const Local& l) const noexcept;
    [[nodiscard]] double grad_q_from(const Local& l) const noexcept;
    [[nodiscard]] bool masked(const Local& l, double t) const;
    [[nodiscard]] double log_reference_amplitude(double t) const;
    [[nodiscard]] long double amplitude_extended(long double y, double t) const;
    [[nodiscard]] long double quantum_potential_extended(long double y, double t) const;

    SlitExperiment exp_;
    PhysicalConstants consts_;
    double log_scale_;
    double hbar2_over_2m_;  // eV cm^2
};

struct CrossSection {
    double x = 0.0;
    double t = 0.0;
    std::vector<FieldSample> samples;  // S unwrapped outward from y = 0
    std::vector<Valley> valleys;       // positive side first, then negative side
    std::string diagnostic;
};

/// Default half-width of the scanned window at time t: Y + 6 sigma_t.
[[nodiscard]] double default_half_range(const WaveField& field, double t);

/// Samples Q along y on a symmetric grid at t = x / v_x and locates the
/// valleys of Q. Extremum positions are refined by root-finding on the
/// analytic dQ/dy, so valley data are insensitive to n_samples.
/// Throws DomainError if n_samples < 100 or y_half_range <= 0.
[[nodiscard]] CrossSection cross_section_scan(const WaveField& field, double x, double y_half_range,
                                              int n_samples);

/// Continuous unwrap of a phase sequence (radians), outward from index `anchor`.
/// NaN entries are skipped and stay NaN.
[[nodiscard]] std::vector<double> unwrap_phase(const std::vector<double>& phase, std::size_t anchor);

}  // namespace bohm
