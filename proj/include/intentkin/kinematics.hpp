#pragma once

// Uniformly sampled time-series primitives: 3D trajectories, forward
// differences and a robust median filter.
//
// Frame alignment convention: a forward difference between samples i and
// i+1 is attributed to frame i, so every derived series keeps the offset of
// its source and loses samples only at the tail.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "intentkin/errors.hpp"

namespace intentkin {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;  // vertical, pointing up
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend constexpr Vec3 operator*(Vec3 v, double s) { return s * v; }
    constexpr Vec3& operator+=(Vec3 o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

    constexpr double squared_norm() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(squared_norm()); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

/// Uniformly sampled center-of-mass path p(t) in scene units.
///
/// Construction checks finiteness and dt; the minimum length is enforced by
/// the operations that need derivatives (they throw SeriesTooShort).
class Trajectory {
public:
    Trajectory(std::vector<Vec3> positions, double dt, double frame0_time = 0.0)
        : positions_(std::move(positions)), dt_(dt), frame0_time_(frame0_time) {
        if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
            throw InvalidInput("trajectory dt must be positive and finite");
        }
        if (!std::isfinite(frame0_time_)) {
            throw InvalidInput("trajectory start time must be finite");
        }
        for (std::size_t i = 0; i < positions_.size(); ++i) {
            if (!positions_[i].finite()) {
                throw InvalidInput("non-finite position at frame " + std::to_string(i));
            }
        }
    }

    std::span<const Vec3> positions() const noexcept { return positions_; }
    const Vec3& operator[](std::size_t i) const { return positions_[i]; }
    std::size_t size() const noexcept { return positions_.size(); }
    double dt() const noexcept { return dt_; }
    double frame0_time() const noexcept { return frame0_time_; }
    double time_at(std::size_t i) const noexcept { return frame0_time_ + static_cast<double>(i) * dt_; }

private:
    std::vector<Vec3> positions_;
    double dt_;
    double frame0_time_;
};

/// Real-valued series aligned to a source trajectory by `offset`.
struct ScalarSeries {
    std::vector<double> values;
    double dt = 1.0;
    std::size_t offset = 0;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

enum class Axis { x, y, z };

inline ScalarSeries component(const Trajectory& traj, Axis axis) {
    ScalarSeries out{{}, traj.dt(), 0};
    out.values.reserve(traj.size());
    for (const Vec3& p : traj.positions()) {
        out.values.push_back(axis == Axis::x ? p.x : axis == Axis::y ? p.y : p.z);
    }
    return out;
}

/// out[i] = (s[i+1] - s[i]) / dt, attributed to frame i.
inline ScalarSeries finite_difference(const ScalarSeries& s) {
    if (s.size() < 2) {
        throw SeriesTooShort(s.size(), 2);
    }
    ScalarSeries out{{}, s.dt, s.offset};
    out.values.resize(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        out.values[i] = (s.values[i + 1] - s.values[i]) / s.dt;
    }
    return out;
}

/// Forward-difference velocity per frame; length n-1, attributed to the earlier frame.
inline std::vector<Vec3> velocities(const Trajectory& traj) {
    if (traj.size() < 2) {
        throw SeriesTooShort(traj.size(), 2);
    }
    std::vector<Vec3> v(traj.size() - 1);
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const Vec3 d = traj[i + 1] - traj[i];
        v[i] = {d.x / traj.dt(), d.y / traj.dt(), d.z / traj.dt()};
    }
    return v;
}

/// Inclusive sample range [lo, hi] of the centered window of size `window`
/// at index i of an n-sample series.
///
/// Odd windows reach (w-1)/2 to each side; even windows reach w/2-1 back and
/// w/2 forward, so with the lower median a rising series passes unchanged.
/// Near the ends both reaches shrink to the distance to the nearest
/// boundary, so the window stays centered on i.
inline std::pair<std::size_t, std::size_t> centered_window(std::size_t i, std::size_t n, std::size_t window) {
    const std::size_t back = (window - 1) / 2;
    const std::size_t fwd = window / 2;
    const std::size_t room = std::min(i, n - 1 - i);
    return {i - std::min(back, room), i + std::min(fwd, room)};
}

/// Lower median of a non-empty set of values (sorts in place).
template <typename T>
T lower_median(std::span<T> values) {
    const std::size_t k = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
    return values[k];
}

/// Centered running median with shrinking windows at the edges.
template <typename T>
std::vector<T> median_filter_values(std::span<const T> s, std::size_t window) {
    if (window == 0) {
        throw InvalidInput("median window must be at least 1");
    }
    std::vector<T> out(s.size());
    std::vector<T> scratch;
    scratch.reserve(window);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto [lo, hi] = centered_window(i, s.size(), window);
        scratch.assign(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        out[i] = lower_median(std::span<T>(scratch));
    }
    return out;
}

inline constexpr std::size_t kDefaultMedianWindow = 30;

inline ScalarSeries median_filter(const ScalarSeries& s, std::size_t window = kDefaultMedianWindow) {
    return {median_filter_values<double>(s.values, window), s.dt, s.offset};
}

/// a_y(t) = d^2 y / dt^2 by two forward differences; length n-2, offset 0.
inline ScalarSeries vertical_acceleration(const Trajectory& traj) {
    if (traj.size() < 3) {
        throw SeriesTooShort(traj.size(), 3);
    }
    return finite_difference(finite_difference(component(traj, Axis::y)));
}

/// Median absolute deviation about the lower median; 0 for an empty series.
inline double median_absolute_deviation(std::span<const double> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::vector<double> work(values.begin(), values.end());
    const double center = lower_median(std::span<double>(work));
    for (std::size_t i = 0; i < values.size(); ++i) {
        work[i] = std::abs(values[i] - center);
    }
    return lower_median(std::span<double>(work));
}

}  // namespace intentkin
