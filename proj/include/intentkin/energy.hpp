#pragma once

// Mechanical-energy bookkeeping for a unit-mass point agent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "intentkin/errors.hpp"
#include "intentkin/kinematics.hpp"

namespace intentkin {

inline constexpr double kStandardGravity = 9.81;

inline void require_positive_gravity(double g) {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw InvalidInput("gravitational acceleration g must be positive and finite");
    }
}

/// K[i] = 1/2 |v[i]|^2 with v the forward-difference velocity; length n-1.
inline ScalarSeries kinetic_energy(const Trajectory& traj) {
    const std::vector<Vec3> v = velocities(traj);
    ScalarSeries out{{}, traj.dt(), 0};
    out.values.reserve(v.size());
    for (const Vec3& vi : v) {
        out.values.push_back(0.5 * vi.squared_norm());
    }
    return out;
}

/// V[i] = g (y[i] - y[0]); length n.
inline ScalarSeries potential_energy(const Trajectory& traj, double g) {
    require_positive_gravity(g);
    if (traj.size() < 1) {
        throw SeriesTooShort(traj.size(), 1);
    }
    ScalarSeries out{{}, traj.dt(), 0};
    out.values.reserve(traj.size());
    const double y0 = traj[0].y;
    for (const Vec3& p : traj.positions()) {
        out.values.push_back(g * (p.y - y0));
    }
    return out;
}

/// Potential energy sampled on the same half-step grid as the
/// forward-difference velocity: V[i] = g ((y[i] + y[i+1]) / 2 - (y[0] + y[1]) / 2).
///
/// Pairing K from forward differences with V at integer frames leaves a
/// spurious dE/dt of g^2 dt / 2 on any free fall; on the shared grid a
/// constant-acceleration path conserves E exactly.
inline ScalarSeries staggered_potential_energy(const Trajectory& traj, double g) {
    require_positive_gravity(g);
    if (traj.size() < 2) {
        throw SeriesTooShort(traj.size(), 2);
    }
    ScalarSeries out{{}, traj.dt(), 0};
    out.values.reserve(traj.size() - 1);
    const double ref = 0.5 * (traj[0].y + traj[1].y);
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        out.values.push_back(g * (0.5 * (traj[i].y + traj[i + 1].y) - ref));
    }
    return out;
}

struct EnergyProfile {
    ScalarSeries kinetic;         // n-1
    ScalarSeries potential;       // n-1, staggered grid, potential[0] == 0
    ScalarSeries total;           // kinetic + potential
    ScalarSeries filtered_total;  // median-filtered total
    ScalarSeries rate;            // dE/dt of filtered_total, n-2
    double g = kStandardGravity;
    double y0 = 0.0;
};

/// Builds K, V, E = K + V, median-filters E and differentiates it.
inline EnergyProfile energy_rate(const Trajectory& traj, double g = kStandardGravity,
                                 std::size_t window = kDefaultMedianWindow) {
    require_positive_gravity(g);
    if (traj.size() < 3) {
        throw SeriesTooShort(traj.size(), 3);
    }
    EnergyProfile p;
    p.g = g;
    p.y0 = traj[0].y;
    p.kinetic = kinetic_energy(traj);
    p.potential = staggered_potential_energy(traj, g);
    p.total = ScalarSeries{std::vector<double>(p.kinetic.size()), traj.dt(), 0};
    for (std::size_t i = 0; i < p.kinetic.size(); ++i) {
        p.total.values[i] = p.kinetic.values[i] + p.potential.values[i];
    }
    p.filtered_total = median_filter(p.total, window);
    p.rate = finite_difference(p.filtered_total);
    return p;
}

/// Threshold for "dE/dt > 0": max(floor, mad_scale * MAD(rate)).
struct EnergyThreshold {
    double floor = 0.5;  // energy per unit mass per second
    double mad_scale = 3.0;

    double resolve(std::span<const double> rate) const {
        return std::max(floor, mad_scale * median_absolute_deviation(rate));
    }
};

}  // namespace intentkin
