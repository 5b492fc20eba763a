#include "bohm/wavefield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "bohm/errors.hpp"

namespace bohm {

namespace {

using cplx = std::complex<double>;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFdRelativeStep = 5e-4;
// Both finite-difference routes work in extended precision: in double, R''
// from R is round-off bound wherever R'' is small against R / h^2, and dQ/dy
// loses its relative accuracy next to its own zero crossings.
constexpr double kCurvatureRelativeStep = 3e-3;

double wrap_pi(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

}  // namespace

SlitExperiment SlitExperiment::jonsson(const PhysicalConstants& consts) {
    SlitExperiment e;
    e.slit_half_separation = 1.43e-4;
    e.packet_width = 0.07e-4;
    e.kinetic_energy = 45e3;
    e.forward_speed = forward_speed_from_energy(e.kinetic_energy, consts);
    e.screen_distance = 35.0;
    e.cross_section_x = 18.0;
    return e;
}

double forward_speed_from_energy(double kinetic_energy, const PhysicalConstants& consts) {
    return consts.c * std::sqrt(2.0 * kinetic_energy / consts.electron_rest_energy);
}

void validate(const SlitExperiment& e, const PhysicalConstants& consts) {
    auto fail = [](const std::string& what) { throw PhysicsError(what); };
    if (!(e.slit_half_separation > 0.0)) fail("experiment.slit_half_separation_cm must be > 0");
    if (!(e.packet_width > 0.0)) fail("experiment.packet_width_cm must be > 0");
    if (!(e.kinetic_energy > 0.0)) fail("experiment.kinetic_energy_eV must be > 0");
    if (!(e.screen_distance > 0.0)) fail("experiment.screen_distance_cm must be > 0");
    if (!(e.cross_section_x > 0.0 && e.cross_section_x <= e.screen_distance)) {
        fail("experiment.cross_section_x_cm must satisfy 0 < x <= screen_distance_cm");
    }
    const double ratio = e.kinetic_energy / consts.electron_rest_energy;
    if (ratio > 0.2) {
        fail("experiment.kinetic_energy_eV: T/mc^2 = " + std::to_string(ratio) +
             " exceeds the non-relativistic limit 0.2");
    }
    const double v = forward_speed_from_energy(e.kinetic_energy, consts);
    if (!(std::abs(e.forward_speed - v) <= 1e-6 * v)) {
        fail("experiment.forward_speed_cm_s is inconsistent with kinetic_energy_eV (expected " +
             std::to_string(v) + ")");
    }
}

WaveField::WaveField(const SlitExperiment& exp, const PhysicalConstants& consts, double amplitude_scale)
    : exp_(exp),
      consts_(consts),
      log_scale_(std::log(amplitude_scale)),
      hbar2_over_2m_(consts.hbar * consts.hbar / (2.0 * consts.electron_mass())) {
    if (!(exp.packet_width > 0.0)) throw DomainError("packet width must be positive");
    if (!(amplitude_scale > 0.0)) throw DomainError("amplitude scale must be positive");
}

double WaveField::spreading(double t) const noexcept {
    const double s0 = exp_.packet_width;
    return consts_.hbar * t / (2.0 * consts_.electron_mass() * s0 * s0);
}

double WaveField::sigma_t(double t) const noexcept {
    const double tau = spreading(t);
    return exp_.packet_width * std::sqrt(1.0 + tau * tau);
}

double WaveField::fringe_wavenumber(double t) const noexcept {
    const double st = sigma_t(t);
    return exp_.slit_half_separation * spreading(t) / (st * st);
}

double WaveField::local_scale(double t) const noexcept {
    const double k = fringe_wavenumber(t);
    const double st = sigma_t(t);
    return k > 0.0 ? std::min(st, 1.0 / k) : st;
}

double WaveField::fd_step(double t) const noexcept { return kFdRelativeStep * local_scale(t); }

WaveField::Local WaveField::local(double y, double t) const {
    const double s0 = exp_.packet_width;
    const double tau = spreading(t);
    const cplx one_plus(1.0, tau);
    const cplx w = 1.0 / (4.0 * s0 * s0 * one_plus);
    const cplx prefactor = 1.0 / std::sqrt(one_plus);

    const std::array<double, 2> centres{exp_.slit_half_separation, -exp_.slit_half_separation};
    std::array<cplx, 2> expo{};
    for (std::size_t j = 0; j < 2; ++j) {
        const double z = y - centres[j];
        expo[j] = -z * z * w;
    }
    const cplx lead = expo[0].real() >= expo[1].real() ? expo[0] : expo[1];

    cplx p{}, p1{}, p2{}, p3{};
    for (std::size_t j = 0; j < 2; ++j) {
        const double z = y - centres[j];
        const cplx g = std::exp(expo[j] - lead);
        const cplx wz = w * z;
        p += g;
        p1 += -2.0 * wz * g;
        p2 += (4.0 * wz * wz - 2.0 * w) * g;
        p3 += (-8.0 * wz * wz * wz + 12.0 * w * wz) * g;
    }

    Local l{};
    const double abs_p = std::abs(p);
    l.log_R = log_scale_ + std::log(std::abs(prefactor)) + lead.real() + std::log(abs_p);
    l.phase = wrap_pi(std::arg(prefactor) + lead.imag() + std::arg(p));
    if (abs_p == 0.0) {
        l.u = l.du = l.d2u = cplx(kNaN, kNaN);
        l.psi = 0.0;
        return l;
    }
    const cplx u = p1 / p;
    const cplx du = p2 / p - u * u;
    const cplx d2u = p3 / p - 3.0 * u * du - u * u * u;
    l.u = u;
    l.du = du;
    l.d2u = d2u;
    l.psi = std::exp(log_scale_ + lead) * prefactor * p;
    return l;
}

std::complex<double> WaveField::psi(double y, double t) const { return local(y, t).psi; }

long double WaveField::amplitude_extended(long double y, double t) const {
    using lc = std::complex<long double>;
    const long double s0 = exp_.packet_width;
    const long double Y = exp_.slit_half_separation;
    const lc one_plus(1.0L, spreading(t));
    const lc w = 1.0L / (4.0L * s0 * s0 * one_plus);
    const lc p = std::exp(-(y - Y) * (y - Y) * w) + std::exp(-(y + Y) * (y + Y) * w);
    return std::exp(static_cast<long double>(log_scale_)) * std::abs(p / std::sqrt(one_plus));
}

long double WaveField::quantum_potential_extended(long double y, double t) const {
    using lc = std::complex<long double>;
    const long double s0 = exp_.packet_width;
    const lc w = 1.0L / (4.0L * s0 * s0 * lc(1.0L, spreading(t)));
    const std::array<long double, 2> centres{exp_.slit_half_separation, -exp_.slit_half_separation};
    std::array<lc, 2> expo{};
    for (std::size_t j = 0; j < 2; ++j) expo[j] = -(y - centres[j]) * (y - centres[j]) * w;
    const lc lead = expo[0].real() >= expo[1].real() ? expo[0] : expo[1];
    lc p{}, p1{}, p2{};
    for (std::size_t j = 0; j < 2; ++j) {
        const lc g = std::exp(expo[j] - lead);
        const lc wz = w * (y - centres[j]);
        p += g;
        p1 += -2.0L * wz * g;
        p2 += (4.0L * wz * wz - 2.0L * w) * g;
    }
    const lc u = p1 / p;
    const long double a = u.real();
    return -static_cast<long double>(hbar2_over_2m_) * ((p2 / p - u * u).real() + a * a);
}

double WaveField::log_reference_amplitude(double t) const {
    // Trajectory and scan loops query the same t many times in a row.
    struct Cache {
        const WaveField* owner = nullptr;
        double Y = 0.0, s0 = 0.0, scale = 0.0, t = 0.0, value = 0.0;
    };
    thread_local Cache cache;
    if (cache.owner == this && cache.t == t && cache.Y == exp_.slit_half_separation &&
        cache.s0 == exp_.packet_width && cache.scale == log_scale_) {
        return cache.value;
    }
    const double v = std::max(local(0.0, t).log_R, local(exp_.slit_half_separation, t).log_R);
    cache = {this, exp_.slit_half_separation, exp_.packet_width, log_scale_, t, v};
    return v;
}

double WaveField::reference_amplitude(double t) const { return std::exp(log_reference_amplitude(t)); }

bool WaveField::masked(const Local& l, double t) const {
    static const double log_floor = std::log(kNodeFloor);
    if (!std::isfinite(l.u.real())) return true;
    return l.log_R - log_reference_amplitude(t) < log_floor;
}

bool WaveField::is_node(double y, double t) const { return masked(local(y, t), t); }

WaveField::Polar WaveField::amplitude_phase(double y, double t) const {
    const Local l = local(y, t);
    const double R = std::exp(l.log_R);
    if (masked(l, t)) return {R, kNaN, false};
    return {R, consts_.hbar * l.phase, true};
}

double WaveField::q_from(const Local& l) const noexcept {
    const double a = l.u.real();
    return -hbar2_over_2m_ * (l.du.real() + a * a);
}

double WaveField::grad_q_from(const Local& l) const noexcept {
    const double a = l.u.real();
    return -hbar2_over_2m_ * (l.d2u.real() + 2.0 * a * l.du.real());
}

double WaveField::phase_gradient(double y, double t) const {
    const Local l = local(y, t);
    if (masked(l, t)) throw NumericalError("phase gradient requested at a node");
    return consts_.hbar * l.u.imag();
}

double WaveField::amplitude_curvature(double y, double t, GradientMethod method) const {
    if (method == GradientMethod::analytic) {
        const Local l = local(y, t);
        const double a = l.u.real();
        return std::exp(l.log_R) * (l.du.real() + a * a);
    }
    using ld = long double;
    const ld h = kCurvatureRelativeStep * local_scale(t);
    const ld yy = y;
    auto R = [&](ld v) { return amplitude_extended(v, t); };
    return static_cast<double>((-R(yy + 2 * h) + 16 * R(yy + h) - 30 * R(yy) + 16 * R(yy - h) - R(yy - 2 * h)) /
                               (12 * h * h));
}

double WaveField::quantum_potential(double y, double t) const {
    const Local l = local(y, t);
    if (masked(l, t)) throw NumericalError("quantum potential requested at a node");
    return q_from(l);
}

double WaveField::grad_quantum_potential(double y, double t, GradientMethod method) const {
    const Local l = local(y, t);
    if (masked(l, t)) throw NumericalError("quantum potential gradient requested at a node");
    if (method == GradientMethod::analytic) return grad_q_from(l);
    using ld = long double;
    const ld h = fd_step(t);
    const ld yy = y;
    auto Q = [&](ld v) { return quantum_potential_extended(v, t); };
    return static_cast<double>((-Q(yy + 2 * h) + 8 * Q(yy + h) - 8 * Q(yy - h) + Q(yy - 2 * h)) / (12 * h));
}

FieldSample WaveField::sample(double y, double t) const {
    const Local l = local(y, t);
    FieldSample s;
    s.y = y;
    s.t = t;
    s.psi_re = l.psi.real();
    s.psi_im = l.psi.imag();
    s.R = std::exp(l.log_R);
    if (masked(l, t)) {
        s.S = s.Q = s.gradQ = kNaN;
        s.flag = SampleFlag::node;
        return s;
    }
    s.S = consts_.hbar * l.phase;
    s.Q = q_from(l);
    s.gradQ = grad_q_from(l);
    return s;
}

std::vector<double> unwrap_phase(const std::vector<double>& phase, std::size_t anchor) {
    std::vector<double> out(phase.size(), kNaN);
    if (phase.empty()) return out;
    anchor = std::min(anchor, phase.size() - 1);
    auto sweep = [&](std::size_t from, auto step, auto done) {
        double prev_raw = kNaN, prev_out = kNaN;
        for (std::size_t i = from; !done(i); i = step(i)) {
            if (std::isnan(phase[i])) continue;
            if (std::isnan(prev_raw)) {
                out[i] = std::isnan(out[i]) ? phase[i] : out[i];
            } else {
                out[i] = prev_out + wrap_pi(phase[i] - prev_raw);
            }
            prev_raw = phase[i];
            prev_out = out[i];
        }
    };
    // Seed the anchor (or the nearest defined sample) with its principal value.
    out[anchor] = phase[anchor];
    sweep(anchor, [](std::size_t i) { return i + 1; }, [&](std::size_t i) { return i >= phase.size(); });
    sweep(anchor, [](std::size_t i) { return i - 1; }, [](std::size_t i) { return i == static_cast<std::size_t>(-1); });
    return out;
}

double default_half_range(const WaveField& field, double t) {
    return field.experiment().slit_half_separation + 6.0 * field.sigma_t(t);
}

namespace {

/// Refines an extremum of Q bracketed by [a, b] via a root of dQ/dy.
double refine_extremum(const WaveField& field, double t, double a, double b, double fallback) {
    auto g = [&](double y) { return field.grad_quantum_potential(y, t); };
    try {
        const double ga = g(a);
        const double gb = g(b);
        if (ga == 0.0) return a;
        if (gb == 0.0) return b;
        if ((ga > 0.0) == (gb > 0.0)) return fallback;
        boost::uintmax_t iters = 200;
        const auto tol = boost::math::tools::eps_tolerance<double>(50);
        const auto [lo, hi] = boost::math::tools::toms748_solve(g, a, b, ga, gb, tol, iters);
        return 0.5 * (lo + hi);
    } catch (const std::exception&) {
        return fallback;
    }
}

}  // namespace

CrossSection cross_section_scan(const WaveField& field, double x, double y_half_range, int n_samples) {
    if (n_samples < 100) throw DomainError("cross_section_scan needs at least 100 samples");
    if (!(y_half_range > 0.0)) throw DomainError("cross_section_scan needs a positive half range");

    CrossSection cs;
    cs.x = x;
    cs.t = field.experiment().time_at(x);
    const double t = cs.t;
    const auto n = static_cast<std::size_t>(n_samples);
    const double denom = static_cast<double>(n - 1);

    cs.samples.resize(n);
    std::vector<double> raw_phase(n, kNaN);
    for (std::size_t i = 0; i < n; ++i) {
        // Integer numerator keeps the grid exactly mirror-symmetric.
        const double y = y_half_range * (2.0 * static_cast<double>(i) - denom) / denom;
        cs.samples[i] = field.sample(y, t);
        if (cs.samples[i].flag == SampleFlag::ok) raw_phase[i] = cs.samples[i].S / field.consts().hbar;
    }
    const std::vector<double> unwrapped = unwrap_phase(raw_phase, n / 2);
    for (std::size_t i = 0; i < n; ++i) {
        if (cs.samples[i].flag == SampleFlag::ok) cs.samples[i].S = field.consts().hbar * unwrapped[i];
    }

    auto ok = [&](std::size_t i) { return cs.samples[i].flag == SampleFlag::ok; };
    std::vector<double> minima, maxima;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!ok(i - 1) || !ok(i) || !ok(i + 1)) continue;
        const double ql = cs.samples[i - 1].Q, q = cs.samples[i].Q, qr = cs.samples[i + 1].Q;
        const double a = cs.samples[i - 1].y, b = cs.samples[i + 1].y;
        if (q < ql && q <= qr) minima.push_back(refine_extremum(field, t, a, b, cs.samples[i].y));
        if (q > ql && q >= qr) maxima.push_back(refine_extremum(field, t, a, b, cs.samples[i].y));
    }

    const double centre_tol = 1e-9 * y_half_range;
    std::vector<Valley> positive, negative;
    for (double ymin : minima) {
        auto right = std::upper_bound(maxima.begin(), maxima.end(), ymin);
        if (right == maxima.begin() || right == maxima.end()) continue;
        Valley v;
        v.y_min = ymin;
        v.y_left = *(right - 1);
        v.y_right = *right;
        if (!(v.y_left < v.y_min && v.y_min < v.y_right)) continue;
        const double y_near = ymin < -centre_tol ? v.y_right : v.y_left;
        const double q_min = field.quantum_potential(ymin, t);
        v.depth = field.quantum_potential(y_near, t) - q_min;
        v.half_width = std::abs(ymin - y_near);
        if (!(v.depth > 0.0) || !(v.half_width > 0.0)) continue;
        v.grad_estimate = v.depth / v.half_width;
        (ymin < -centre_tol ? negative : positive).push_back(v);
    }
    std::sort(positive.begin(), positive.end(), [](auto& a, auto& b) { return a.y_min < b.y_min; });
    std::sort(negative.begin(), negative.end(), [](auto& a, auto& b) { return a.y_min > b.y_min; });
    const bool central = !positive.empty() && std::abs(positive.front().y_min) <= centre_tol;
    int idx = 1;
    for (auto& v : positive) v.index = idx++;
    idx = central ? 2 : 1;
    for (auto& v : negative) v.index = idx++;

    cs.valleys = std::move(positive);
    cs.valleys.insert(cs.valleys.end(), negative.begin(), negative.end());
    if (cs.valleys.empty()) cs.diagnostic = "no valleys of Q found in the scanned window";
    return cs;
}

}  // namespace bohm
