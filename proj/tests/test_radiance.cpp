#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bohm/errors.hpp"
#include "bohm/radiance.hpp"
#include "support.hpp"

using namespace bohm;
using testsupport::rel_err;

namespace {
const PhysicalConstants& K = kPaperConstants;

ValleyInput with_tau(double g, double tau, int idx) {
    ValleyInput v;
    v.grad_q = g;
    v.tau = tau;
    v.valley_index = idx;
    return v;
}
}  // namespace

TEST_CASE("Copenhagen baseline is exactly zero") {
    static_assert(copenhagen_emission_power() == 0.0);
    CHECK(copenhagen_emission_power() == 0.0);
}

TEST_CASE("emission power") {
    CHECK(emission_power(K, 5.39e15) == doctest::Approx(3.27e-26).epsilon(0.01));
    CHECK(emission_power(K, 1.70e16) == doctest::Approx(3.25e-25).epsilon(0.01));
    CHECK(emission_power(K, 0.0) == 0.0);
    CHECK(emission_power_from_gradQ(K, 3.06) == doctest::Approx(3.27e-26).epsilon(0.01));
    CHECK(emission_power_from_gradQ(K, 0.93) == doctest::Approx(3.02e-27).epsilon(0.01));
    CHECK(emission_power_from_gradQ(K, 0.8) == doctest::Approx(2.23e-27).epsilon(0.01));
    for (double g : {0.1, 3.06, 9.66}) {
        CHECK(emission_power_from_gradQ(K, g) == emission_power(K, g / K.electron_mass()));
        CHECK(emission_power_from_gradQ(K, -g) == emission_power_from_gradQ(K, g));
    }
}

TEST_CASE("collision time") {
    CHECK(collision_time(1.5e4, 5.39e15, 1e-4 / 7.0) == doctest::Approx(7.01e-11).epsilon(0.01));
    const double dy = 1e-5, v0 = 1e4;
    CHECK(rel_err(collision_time(v0, 1e-3, dy), dy / v0) < 1e-9);
    CHECK(rel_err(collision_time(0.0, 2e15, dy), std::sqrt(2.0 * dy / 2e15)) < 1e-14);
    const double tau = collision_time(v0, 3e15, dy);
    CHECK(rel_err(v0 * tau + 0.5 * 3e15 * tau * tau, dy) < 1e-14);
    CHECK_THROWS_AS((void)collision_time(v0, 0.0, dy), DomainError);
    CHECK_THROWS_AS((void)collision_time(v0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS((void)collision_time(-1.0, 1.0, dy), DomainError);
}

TEST_CASE("photon energy and frequency") {
    const PhotonEstimate p2 = photon_energy_frequency(K, 3.27e-26, 7.01e-11);
    CHECK(p2.energy_J == doctest::Approx(2.29e-36).epsilon(0.005));
    CHECK(p2.frequency_Hz == doctest::Approx(3.45e-3).epsilon(0.005));
    CHECK(photon_energy_frequency(K, 3.25e-25, 2.8e-11).frequency_Hz == doctest::Approx(1.37e-2).epsilon(0.01));
    const PhotonEstimate z = photon_energy_frequency(K, 0.0, 1e-10);
    CHECK(z.energy_J == 0.0);
    CHECK(z.frequency_Hz == 0.0);
}

TEST_CASE("spectrum step, valleys 1 and 3") {
    const SpectrumStep s1 = spectrum_step(K, with_tau(9.66, 2.8e-11, 1));
    CHECK(s1.omega_c == doctest::Approx(3.57e10).epsilon(0.01));
    CHECK(s1.lambda_c == doctest::Approx(0.84).epsilon(0.01));
    CHECK(s1.I0 == doctest::Approx(1.63e-27).epsilon(0.03));
    const SpectrumStep s3 = spectrum_step(K, with_tau(0.93, 1.02e-10, 3));
    CHECK(s3.omega_c == doctest::Approx(9.8e9).epsilon(0.01));
    CHECK(s3.lambda_c == doctest::Approx(3.06).epsilon(0.01));
    CHECK(s3.I0 == doctest::Approx(2e-28).epsilon(0.03));
    CHECK(s3.intensity(0.5 * s3.omega_c) == s3.I0);
    CHECK(s3.intensity(s3.omega_c) == 0.0);
}

TEST_CASE("spectrum step invariants") {
    for (auto [g, tau] : {std::pair{9.66, 2.8e-11}, {3.06, 7.01e-11}, {0.93, 1.02e-10}, {0.8, 1.09e-10}}) {
        const SpectrumStep s = spectrum_step(K, with_tau(g, tau, 1));
        CHECK(s.omega_c * s.tau == 1.0);
        CHECK(rel_err(s.lambda_c * s.omega_c, K.c) < 1e-15);
        const double p_ev = convert({s.power_W, Unit::W}, Unit::eV_per_s, K).value;
        CHECK(rel_err(s.I0, p_ev * s.tau * s.tau) < 1e-12);
        // Heuristic alpha hbar (dv/c)^2 / tau agrees with P tau to within the 4/3 factor.
        const double ratio = p_ev * s.tau / heuristic_photon_energy(K, s.delta_v, s.tau);
        CHECK(ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
        CHECK(ratio >= 0.1);
        CHECK(ratio <= 10.0);
        // Soft photon: nu tau << 1.
        CHECK(s.photon_frequency_Hz * s.tau < 1e-9);
        CHECK(s.power_W > copenhagen_emission_power());
    }
    const SpectrumStep zero = spectrum_step(K, with_tau(0.0, 1e-10, 1));
    CHECK(zero.power_W == 0.0);
    CHECK(zero.I0 == 0.0);
    ValleyInput both = with_tau(1.0, 1e-10, 1);
    both.dy = 1e-5;
    CHECK_THROWS_AS((void)spectrum_step(K, both), DomainError);
    ValleyInput none;
    none.grad_q = 1.0;
    none.v0 = 1e4;
    CHECK_THROWS_AS((void)spectrum_step(K, none), DomainError);
}

TEST_CASE("spectrum step from a traversal distance") {
    ValleyInput v;
    v.grad_q = 3.06;
    v.v0 = 1.5e4;
    v.dy = 1e-4 / 7.0;
    const SpectrumStep s = spectrum_step(K, v);
    CHECK(s.tau == doctest::Approx(7.01e-11).epsilon(0.01));
    CHECK(s.photon_frequency_Hz == doctest::Approx(3.45e-3).epsilon(0.02));
}

TEST_CASE("gaussian overlap") {
    const PhysicalConstants modern = constants(ConstantsPreset::modern);
    const OverlapResult r = gaussian_overlap(modern, {476554.0, 2.818e-13});
    CHECK(r.exponent_magnitude == doctest::Approx(3.359e-15).epsilon(0.01));
    CHECK(std::abs(r.overlap - 1.0) < 1e-10);
    CHECK(gaussian_overlap(K, {0.0, 1e-13}).overlap == 1.0);
    CHECK(std::abs(gaussian_overlap(K, {476554.0, 2.818e-10}).overlap - 1.0) < 1e-8);
    CHECK(gaussian_overlap(K, {476554.0, 1.0}).overlap < 1.0);
    CHECK_THROWS_AS((void)gaussian_overlap(K, {1.0, 0.0}), DomainError);
}

TEST_CASE("angular factor integrates to 8 pi / 3") {
    const double pi = std::numbers::pi;
    CHECK(angular_factor(0.0) == 0.0);
    CHECK(angular_factor(pi / 2) == 1.0);
    CHECK_THROWS_AS((void)angular_factor(-0.1), DomainError);
    CHECK_THROWS_AS((void)angular_factor(4.0), DomainError);
    // Composite Simpson over theta; the phi integral contributes 2 pi.
    const int n = 2000;
    const double h = pi / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double th = std::min(i * h, pi);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * angular_factor(th) * std::sin(th);
    }
    CHECK(std::abs(2.0 * pi * acc * h / 3.0 - 8.0 * pi / 3.0) < 1e-9);
}

TEST_CASE("radiated energy along a path") {
    Trajectory tr;
    const double a = 5.39e15, tau = 7.01e-11;
    for (int i = 0; i <= 10; ++i) tr.samples.push_back({tau * i / 10.0, 0.0, 0.0, a, a});
    const RadiatedEnergy e = trajectory_radiated_energy(K, tr);
    CHECK(rel_err(e.total_J, emission_power(K, a) * tau) < 1e-6);

    Trajectory straight;
    for (int i = 0; i <= 10; ++i) straight.samples.push_back({1e-11 * i, 1e-4, 0.0, 0.0, 0.0});
    CHECK(trajectory_radiated_energy(K, straight).total_J == 0.0);

    tr.status = TrajectoryStatus::halted_at_node;
    CHECK_THROWS_AS((void)trajectory_radiated_energy(K, tr), NumericalError);
}

TEST_CASE("field-derived radiated energy, per valley") {
    const SlitExperiment e = testsupport::calibrated();
    const WaveField f(e, K);
    const Trajectory tr = integrate_trajectory(f, e.slit_half_separation, e.time_at_screen());
    REQUIRE(tr.valid());
    const RadiatedEnergy r = trajectory_radiated_energy(f, tr);
    double sum = 0.0;
    for (auto [k, v] : r.per_valley_J) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(rel_err(sum, r.total_J) < 1e-12);
    CHECK(r.total_J > 2.29e-36 / 10.0);
    CHECK(rel_err(r.total_J, trajectory_radiated_energy(K, tr).total_J) < 1e-12);
}

TEST_CASE("ensemble-mean power vanishes") {
    const SlitExperiment e = testsupport::calibrated();
    const WaveField f(e, K);
    const double t = e.time_at_section();
    const double L = density_half_range(f, t);
    const EnsembleMeanPower m = ensemble_mean_power(f, t, -L, L);
    CHECK(m.max_abs_grad_q > 0.0);
    CHECK(std::abs(m.mean_grad_q) < 1e-6 * m.max_abs_grad_q);
    CHECK(m.boundary_mass <= 1e-6);
    CHECK(m.power_W < 1e-6 * emission_power_from_gradQ(K, 9.66));

    const SlitExperiment s = testsupport::single_packet();
    const WaveField g(s, K);
    const double Ls = density_half_range(g, t);
    const EnsembleMeanPower ms = ensemble_mean_power(g, t, -Ls, Ls);
    CHECK(std::abs(ms.mean_grad_q) < 1e-8 * ms.max_abs_grad_q);

    CHECK_THROWS_AS((void)ensemble_mean_power(f, t, -0.2 * L, 0.2 * L), DomainError);
    CHECK_THROWS_AS((void)ensemble_mean_power(f, t, L, -L), DomainError);
}
