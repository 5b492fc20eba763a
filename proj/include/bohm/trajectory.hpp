#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bohm/wavefield.hpp"

namespace bohm {

/// Guidance law v_y = (1/m) dS/dy, cm/s. Throws NumericalError at a node.
[[nodiscard]] double velocity_field(const WaveField& field, double y, double t);

/// Beable acceleration -(1/m) dQ/dy, cm/s^2. Throws NumericalError at a node.
[[nodiscard]] double bohmian_acceleration(const WaveField& field, double y, double t);

/// -(1/m) gradQ for a given gradient in eV/cm.
[[nodiscard]] double acceleration_from_gradient(const PhysicalConstants& consts, double grad_q);

struct TrajectorySample {
    double t;
    double y;
    double v_y;
    double a_field;    // -gradQ/m at (y, t)
    double a_numeric;  // d v_y / dt along the path, by differencing the local flow
};

enum class TrajectoryStatus { complete, halted_at_node };

struct Trajectory {
    double y0 = 0.0;
    double forward_speed = 0.0;
    std::vector<TrajectorySample> samples;
    TrajectoryStatus status = TrajectoryStatus::complete;
    std::string diagnostic;

    [[nodiscard]] double x_at(double t) const noexcept { return forward_speed * t; }
    [[nodiscard]] bool valid() const noexcept { return status == TrajectoryStatus::complete; }
};

struct IntegrationOptions {
    double tol = 1e-9;  // relative local error per step
    bool numeric_acceleration = true;
    int min_samples = 400;  // caps the step so at least this many samples are recorded
};

/// Integrates dy/dt = v_y(y, t) from (y0, 0) to t_end with an adaptive
/// Dormand-Prince 4(5) scheme. A node encounter stops the integration and
/// returns the partial path with status halted_at_node.
/// Throws DomainError if y0 == 0, t_end < 0, or y0 starts on a node.
[[nodiscard]] Trajectory integrate_trajectory(const WaveField& field, double y0, double t_end,
                                              const IntegrationOptions& opts = {});

/// Final position only; throws NumericalError on a node encounter.
[[nodiscard]] double transport(const WaveField& field, double y0, double t_end, double tol = 1e-9);

/// dv_y/dt at (y, t) from a fourth-order central difference of v_y along the flow.
[[nodiscard]] double flow_acceleration(const WaveField& field, double y, double t);

struct EnsembleResult {
    int n = 0;
    std::uint64_t seed = 0;
    double t_end = 0.0;
    std::vector<double> initial_positions;
    std::vector<double> final_positions;  // NaN where transport failed
    double ks_statistic = 0.0;
    int failures = 0;
    bool valid = true;
};

struct EnsembleOptions {
    int n = 10000;
    std::uint64_t seed = 1;
    double t_end = 0.0;
    double tol = 1e-9;
    unsigned workers = 0;  // 0 = hardware concurrency
};

/// Inverse-CDF sampler for |psi(y, t)|^2 tabulated on a fixed grid.
class DensitySampler {
public:
    static constexpr std::size_t kGridPoints = std::size_t{1} << 16;

    DensitySampler(const WaveField& field, double t, double half_range);

    [[nodiscard]] double cdf(double y) const;
    [[nodiscard]] double inverse_cdf(double u) const;
    [[nodiscard]] double half_range() const noexcept { return half_range_; }

private:
    std::vector<double> y_;
    std::vector<double> cdf_;
    double half_range_;
};

/// Window that carries essentially all of |psi(., t)|^2: Y + 8 sigma_t.
[[nodiscard]] double density_half_range(const WaveField& field, double t);

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
[[nodiscard]] double ks_statistic(std::vector<double> sample, const DensitySampler& reference);

/// Samples n initial positions from |psi(y,0)|^2, transports each to t_end
/// (in parallel; results are kept in input order) and reports the KS distance
/// of the final positions from |psi(y, t_end)|^2. The result is flagged
/// invalid when more than 1% of the transports fail.
/// Throws DomainError if n < 100.
[[nodiscard]] EnsembleResult run_ensemble(const WaveField& field, const EnsembleOptions& opts);

}  // namespace bohm
