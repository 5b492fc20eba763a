#include "bohm/trajectory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <boost/numeric/odeint.hpp>

#include "bohm/errors.hpp"

namespace bohm {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 1>;
using Stepper = odeint::runge_kutta_dopri5<State>;

struct NodeHit {
    double y;
    double t;
};

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double velocity_or_throw(const WaveField& field, double y, double t) {
    const WaveField::Local l = field.local(y, t);
    if (field.is_node(l, t)) throw NodeHit{y, t};
    return field.consts().hbar * l.u.imag() / field.consts().electron_mass();
}

/// Characteristic time over which v_y changes along the flow at (y, t).
double flow_time_scale(const WaveField& field, double y, double t) {
    const double m = field.consts().electron_mass();
    const double s0 = field.experiment().packet_width;
    const double spread_time = std::max(t, 2.0 * m * s0 * s0 / field.consts().hbar);
    const double v = std::abs(velocity_field(field, y, t));
    const double cross_time = v > 0.0 ? field.local_scale(t) / v : spread_time;
    return std::min(spread_time, cross_time);
}

/// Classic RK4 along the guidance flow, n_sub substeps over a signed interval.
double rk4_flow(const WaveField& field, double y, double t, double dt, int n_sub) {
    const double h = dt / n_sub;
    for (int i = 0; i < n_sub; ++i) {
        const double k1 = velocity_field(field, y, t);
        const double k2 = velocity_field(field, y + 0.5 * h * k1, t + 0.5 * h);
        const double k3 = velocity_field(field, y + 0.5 * h * k2, t + 0.5 * h);
        const double k4 = velocity_field(field, y + h * k3, t + h);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return y;
}

auto make_stepper(const WaveField& field, double y0, double tol, double max_dt) {
    const double abs_tol = tol * std::max(std::abs(y0), field.experiment().packet_width);
    return odeint::make_controlled(abs_tol, tol, max_dt, Stepper());
}

}  // namespace

double velocity_field(const WaveField& field, double y, double t) {
    return field.phase_gradient(y, t) / field.consts().electron_mass();
}

double bohmian_acceleration(const WaveField& field, double y, double t) {
    return acceleration_from_gradient(field.consts(), field.grad_quantum_potential(y, t));
}

double acceleration_from_gradient(const PhysicalConstants& consts, double grad_q) {
    return -grad_q / consts.electron_mass();
}

double flow_acceleration(const WaveField& field, double y, double t) {
    const double h = 1e-3 * flow_time_scale(field, y, t);
    constexpr int kSub = 2;
    const double v_p1 = velocity_field(field, rk4_flow(field, y, t, h, kSub), t + h);
    const double v_m1 = velocity_field(field, rk4_flow(field, y, t, -h, kSub), t - h);
    const double v_p2 = velocity_field(field, rk4_flow(field, y, t, 2 * h, 2 * kSub), t + 2 * h);
    const double v_m2 = velocity_field(field, rk4_flow(field, y, t, -2 * h, 2 * kSub), t - 2 * h);
    return (8.0 * (v_p1 - v_m1) - (v_p2 - v_m2)) / (12.0 * h);
}

Trajectory integrate_trajectory(const WaveField& field, double y0, double t_end,
                                const IntegrationOptions& opts) {
    if (y0 == 0.0) throw DomainError("trajectory start must be off the symmetry axis");
    if (!(t_end >= 0.0)) throw DomainError("t_end must be non-negative");
    if (field.is_node(y0, 0.0)) throw DomainError("trajectory start lies on a node of psi(y, 0)");

    Trajectory traj;
    traj.y0 = y0;
    traj.forward_speed = field.experiment().forward_speed;

    auto record = [&](double y, double t) {
        TrajectorySample s{};
        s.t = t;
        s.y = y;
        s.v_y = velocity_field(field, y, t);
        s.a_field = bohmian_acceleration(field, y, t);
        s.a_numeric = opts.numeric_acceleration ? flow_acceleration(field, y, t)
                                                : std::numeric_limits<double>::quiet_NaN();
        traj.samples.push_back(s);
    };

    if (t_end == 0.0) {
        record(y0, 0.0);
        return traj;
    }

    const double max_dt = t_end / std::max(opts.min_samples, 1);
    auto stepper = make_stepper(field, y0, opts.tol, max_dt);
    State state{y0};
    auto rhs = [&](const State& s, State& dsdt, double t) { dsdt[0] = velocity_or_throw(field, s[0], t); };
    try {
        odeint::integrate_adaptive(stepper, rhs, state, 0.0, t_end, max_dt / 16.0,
                                   [&](const State& s, double t) { record(s[0], t); });
    } catch (const NodeHit& hit) {
        traj.status = TrajectoryStatus::halted_at_node;
        traj.diagnostic = "node encountered near y = " + std::to_string(hit.y) +
                          " cm at t = " + std::to_string(hit.t) + " s";
    } catch (const NumericalError& e) {
        traj.status = TrajectoryStatus::halted_at_node;
        traj.diagnostic = e.what();
    }
    return traj;
}

double transport(const WaveField& field, double y0, double t_end, double tol) {
    if (t_end == 0.0) return y0;
    const double max_dt = t_end / 50.0;
    auto stepper = make_stepper(field, y0, tol, max_dt);
    State state{y0};
    auto rhs = [&](const State& s, State& dsdt, double t) { dsdt[0] = velocity_or_throw(field, s[0], t); };
    try {
        odeint::integrate_adaptive(stepper, rhs, state, 0.0, t_end, max_dt / 16.0);
    } catch (const NodeHit& hit) {
        throw NumericalError("node encountered near y = " + std::to_string(hit.y) + " cm");
    }
    return state[0];
}

double density_half_range(const WaveField& field, double t) {
    return field.experiment().slit_half_separation + 8.0 * field.sigma_t(t);
}

DensitySampler::DensitySampler(const WaveField& field, double t, double half_range)
    : y_(kGridPoints), cdf_(kGridPoints), half_range_(half_range) {
    const double denom = static_cast<double>(kGridPoints - 1);
    std::vector<double> log_rho(kGridPoints);
    double log_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < kGridPoints; ++i) {
        y_[i] = half_range * (2.0 * static_cast<double>(i) - denom) / denom;
        log_rho[i] = 2.0 * field.local(y_[i], t).log_R;
        log_max = std::max(log_max, log_rho[i]);
    }
    cdf_[0] = 0.0;
    double prev = std::exp(log_rho[0] - log_max);
    for (std::size_t i = 1; i < kGridPoints; ++i) {
        const double cur = std::exp(log_rho[i] - log_max);
        cdf_[i] = cdf_[i - 1] + 0.5 * (prev + cur) * (y_[i] - y_[i - 1]);
        prev = cur;
    }
    const double total = cdf_.back();
    if (!(total > 0.0)) throw NumericalError("density has no mass in the sampling window");
    for (double& c : cdf_) c /= total;
}

double DensitySampler::cdf(double y) const {
    if (y <= y_.front()) return 0.0;
    if (y >= y_.back()) return 1.0;
    const auto it = std::upper_bound(y_.begin(), y_.end(), y);
    const std::size_t i = static_cast<std::size_t>(it - y_.begin());
    const double f = (y - y_[i - 1]) / (y_[i] - y_[i - 1]);
    return cdf_[i - 1] + f * (cdf_[i] - cdf_[i - 1]);
}

double DensitySampler::inverse_cdf(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) return y_.front();
    if (it == cdf_.end()) return y_.back();
    const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    const double span = cdf_[i] - cdf_[i - 1];
    const double f = span > 0.0 ? (u - cdf_[i - 1]) / span : 0.5;
    return y_[i - 1] + f * (y_[i] - y_[i - 1]);
}

double ks_statistic(std::vector<double> sample, const DensitySampler& reference) {
    sample.erase(std::remove_if(sample.begin(), sample.end(), [](double v) { return std::isnan(v); }),
                 sample.end());
    if (sample.empty()) return 1.0;
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = reference.cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

EnsembleResult run_ensemble(const WaveField& field, const EnsembleOptions& opts) {
    if (opts.n < 100) throw DomainError("ensemble needs n >= 100");
    if (!(opts.t_end >= 0.0)) throw DomainError("t_end must be non-negative");

    EnsembleResult res;
    res.n = opts.n;
    res.seed = opts.seed;
    res.t_end = opts.t_end;

    const DensitySampler initial(field, 0.0, density_half_range(field, 0.0));
    std::mt19937_64 rng(opts.seed);
    res.initial_positions.resize(static_cast<std::size_t>(opts.n));
    for (double& y : res.initial_positions) y = initial.inverse_cdf(uniform01(rng));

    res.final_positions.assign(res.initial_positions.size(), std::numeric_limits<double>::quiet_NaN());
    const unsigned workers =
        std::max(1u, opts.workers != 0 ? opts.workers : std::thread::hardware_concurrency());
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < res.initial_positions.size(); i += workers) {
            const double y0 = res.initial_positions[i];
            if (y0 == 0.0) continue;
            try {
                res.final_positions[i] = transport(field, y0, opts.t_end, opts.tol);
            } catch (const NumericalError&) {
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    res.failures = static_cast<int>(
        std::count_if(res.final_positions.begin(), res.final_positions.end(), [](double v) { return std::isnan(v); }));
    res.valid = res.failures * 100 <= opts.n;
    const DensitySampler final_density(field, opts.t_end, density_half_range(field, opts.t_end));
    res.ks_statistic = ks_statistic(res.final_positions, final_density);
    return res;
}

}  // namespace bohm
