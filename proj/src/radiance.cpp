#include "bohm/radiance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bohm/errors.hpp"

namespace bohm {

double emission_power(const PhysicalConstants& consts, double acceleration) {
    const double ev_per_s = consts.larmor_prefactor() * acceleration * acceleration;
    return convert({ev_per_s, Unit::eV_per_s}, Unit::W, consts).value;
}

double emission_power_from_gradQ(const PhysicalConstants& consts, double grad_q) {
    return emission_power(consts, grad_q / consts.electron_mass());
}

double collision_time(double v0, double acceleration, double dy) {
    if (!(acceleration > 0.0)) throw DomainError("collision_time: acceleration must be > 0");
    if (!(dy > 0.0)) throw DomainError("collision_time: traversal distance must be > 0");
    if (!(v0 >= 0.0)) throw DomainError("collision_time: v0 must be >= 0");
    // 2 dy / (v0 + sqrt(v0^2 + 2 a dy)) is the positive root without cancellation.
    return 2.0 * dy / (v0 + std::sqrt(v0 * v0 + 2.0 * acceleration * dy));
}

PhotonEstimate photon_energy_frequency(const PhysicalConstants& consts, double power_W, double tau) {
    if (!(power_W >= 0.0)) throw DomainError("photon energy: power must be >= 0");
    if (!(tau > 0.0)) throw DomainError("photon energy: tau must be > 0");
    const double e = power_W * tau;
    return {e, e / consts.planck_h};
}

SpectrumStep spectrum_step(const PhysicalConstants& consts, const ValleyInput& in) {
    if (in.dy.has_value() == in.tau.has_value()) {
        throw DomainError("valley input needs exactly one of dy and tau");
    }
    if (!(in.grad_q >= 0.0)) throw DomainError("valley input: gradQ must be >= 0");
    if (!(in.v0 >= 0.0)) throw DomainError("valley input: v0 must be >= 0");

    SpectrumStep s;
    s.valley_index = in.valley_index;
    s.acceleration = in.grad_q / consts.electron_mass();
    if (in.tau) {
        if (!(*in.tau > 0.0)) throw DomainError("valley input: tau must be > 0");
        s.tau = *in.tau;
    } else if (s.acceleration == 0.0) {
        if (!(in.v0 > 0.0 && *in.dy > 0.0)) throw DomainError("valley input: no motion across the valley");
        s.tau = *in.dy / in.v0;
    } else {
        s.tau = collision_time(in.v0, s.acceleration, *in.dy);
    }
    s.delta_v = s.acceleration * s.tau;
    s.power_W = emission_power(consts, s.acceleration);
    s.omega_c = 1.0 / s.tau;
    s.lambda_c = consts.c / s.omega_c;
    s.I0 = consts.larmor_prefactor() * s.delta_v * s.delta_v;
    const PhotonEstimate ph = photon_energy_frequency(consts, s.power_W, s.tau);
    s.photon_energy_J = ph.energy_J;
    s.photon_frequency_Hz = ph.frequency_Hz;
    return s;
}

double heuristic_photon_energy(const PhysicalConstants& consts, double delta_v, double dt) {
    const double beta = delta_v / consts.c;
    return consts.alpha * consts.hbar * beta * beta / dt;
}

OverlapResult gaussian_overlap(const PhysicalConstants& consts, const OverlapInput& in) {
    if (!(in.d > 0.0)) throw DomainError("gaussian_overlap: d must be > 0");
    const double dp = consts.electron_mass() * in.delta_p_over_m;  // eV s / cm
    const double x = dp * in.d / (2.0 * consts.hbar);
    const double exponent = x * x;
    return {exponent, std::exp(-exponent)};
}

double angular_factor(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("angular_factor: theta outside [0, pi]");
    const double s = std::sin(theta);
    return s * s;
}

namespace {

void require_valid(const Trajectory& traj) {
    if (!traj.valid()) throw NumericalError("radiated energy of an invalid trajectory: " + traj.diagnostic);
}

template <typename KeyFn>
RadiatedEnergy integrate_power(const PhysicalConstants& consts, const Trajectory& traj, KeyFn key) {
    require_valid(traj);
    RadiatedEnergy out;
    const auto& s = traj.samples;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double dt = s[i].t - s[i - 1].t;
        const double e = 0.5 * dt * (emission_power(consts, s[i - 1].a_field) + emission_power(consts, s[i].a_field));
        out.total_J += e;
        out.per_valley_J[key(s[i - 1], s[i])] += e;
    }
    return out;
}

}  // namespace

RadiatedEnergy trajectory_radiated_energy(const PhysicalConstants& consts, const Trajectory& traj) {
    return integrate_power(consts, traj, [](const auto&, const auto&) { return 0; });
}

RadiatedEnergy trajectory_radiated_energy(const WaveField& field, const Trajectory& traj) {
    return integrate_power(field.consts(), traj, [&](const TrajectorySample& a, const TrajectorySample& b) {
        return valley_index_at(field, 0.5 * (a.y + b.y), 0.5 * (a.t + b.t));
    });
}

int valley_index_at(const WaveField& field, double y, double t) {
    const double scale = field.local_scale(t);
    const double half = std::abs(y) + 6.0 * scale;
    const int n = std::clamp(static_cast<int>(40.0 * half / scale), 200, 20000);
    const CrossSection cs = cross_section_scan(field, field.experiment().forward_speed * t, half, n);
    for (const Valley& v : cs.valleys) {
        if (v.y_left <= y && y < v.y_right) return v.index;
    }
    return 0;
}

EnsembleMeanPower ensemble_mean_power(const WaveField& field, double t, double y_lo, double y_hi) {
    if (!(y_hi > y_lo)) throw DomainError("ensemble_mean_power: empty range");
    constexpr std::size_t kIntervals = std::size_t{1} << 16;

    const double width = y_hi - y_lo;
    const double log_ref = std::log(field.reference_amplitude(t));
    auto rho = [&](double y) { return std::exp(2.0 * (field.local(y, t).log_R - log_ref)); };

    // Composite Simpson over [a, b]; f returns the integrand.
    auto simpson = [&](double a, double b, auto&& f) {
        const double h = (b - a) / static_cast<double>(kIntervals);
        double acc = f(a) + f(b);
        for (std::size_t i = 1; i < kIntervals; ++i) {
            acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
        }
        return acc * h / 3.0;
    };

    EnsembleMeanPower out;
    const double mass = simpson(y_lo, y_hi, rho);
    const double outside = simpson(y_lo - width, y_lo, rho) + simpson(y_hi, y_hi + width, rho);
    if (!(mass > 0.0)) throw NumericalError("ensemble_mean_power: no probability mass in range");
    out.boundary_mass = outside / (mass + outside);
    if (out.boundary_mass > 1e-6) {
        throw DomainError("ensemble_mean_power: range leaves " + std::to_string(out.boundary_mass) +
                          " of the probability mass outside");
    }

    double max_abs = 0.0;
    const double first_moment = simpson(y_lo, y_hi, [&](double y) {
        const WaveField::Local l = field.local(y, t);
        const double g = field.grad_quantum_potential(l);
        if (!std::isfinite(g)) return 0.0;
        if (!field.is_node(l, t)) max_abs = std::max(max_abs, std::abs(g));
        return std::exp(2.0 * (l.log_R - log_ref)) * g;
    });
    out.mean_grad_q = first_moment / mass;
    out.max_abs_grad_q = max_abs;
    out.mean_acceleration = acceleration_from_gradient(field.consts(), out.mean_grad_q);
    out.power_W = emission_power(field.consts(), out.mean_acceleration);
    return out;
}

}  // namespace bohm
