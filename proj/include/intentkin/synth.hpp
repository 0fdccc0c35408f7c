#pragma once

// Ground-truth-labeled synthetic trajectories and skeleton sequences.
//
// Paths are built from segments of constant acceleration (rest, constant
// velocity, ballistic flight, frictionless slide). Each segment is
// propagated exactly and contacts are resolved at their exact event time,
// so sampled positions lie on the analytic solution. Ground truth comes from
// the script that built the path, never from the inference pipeline.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intentkin/aggregate.hpp"
#include "intentkin/concepts.hpp"
#include "intentkin/energy.hpp"
#include "intentkin/errors.hpp"
#include "intentkin/kinematics.hpp"
#include "intentkin/random.hpp"
#include "intentkin/skeleton.hpp"

namespace intentkin {

enum class ScenarioKind { projectile, bounce, incline, jump_sequence, walk, walk_trip, fall_and_rest };

inline constexpr ScenarioKind kAllScenarioKinds[] = {
    ScenarioKind::projectile, ScenarioKind::bounce,    ScenarioKind::incline,       ScenarioKind::jump_sequence,
    ScenarioKind::walk,       ScenarioKind::walk_trip, ScenarioKind::fall_and_rest,
};

constexpr std::string_view to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::projectile: return "projectile";
        case ScenarioKind::bounce: return "bounce";
        case ScenarioKind::incline: return "incline";
        case ScenarioKind::jump_sequence: return "jump_sequence";
        case ScenarioKind::walk: return "walk";
        case ScenarioKind::walk_trip: return "walk_trip";
        case ScenarioKind::fall_and_rest: return "fall_and_rest";
    }
    return "walk";
}

inline std::optional<ScenarioKind> parse_scenario_kind(std::string_view s) {
    for (ScenarioKind k : kAllScenarioKinds) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

/// Video label a kind shows when no variant is requested.
constexpr VideoLabel natural_label(ScenarioKind k) {
    return (k == ScenarioKind::jump_sequence || k == ScenarioKind::walk) ? VideoLabel::intentional
                                                                         : VideoLabel::non_intentional;
}

/// A scripted scene. `label` selects the self-propelled (intentional) or
/// passive (non-intentional) script of the kind; unset means the kind's
/// natural label. Unset params take the kind's documented defaults.
///
/// Params (all optional, SI units, frames are counts at dt):
///   projectile   passive: vx vy vz height frames | scripted: vx vy stand_frames
///   bounce       passive: height vx restitution frames | scripted: hop_speed hops pause_frames
///   incline      passive: theta_deg slide_frames runout_frames | scripted: theta_deg speed climb_frames
///   jump_sequence scripted: jump_speed jumps stand_frames | passive: drop stand_frames rest_frames
///   walk         scripted: speed walk_frames | passive: speed walk_frames collapse rest_frames
///   walk_trip    passive: speed walk_frames fall_frames rest_frames | scripted: speed hop_speed walk_frames
///   fall_and_rest passive: height vx rest_frames | scripted: drop hop_speed walk_speed
struct Scenario {
    ScenarioKind kind = ScenarioKind::projectile;
    std::optional<VideoLabel> label;
    std::map<std::string, double> params;
    double g = kStandardGravity;
    double dt = 1.0 / 60.0;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;

    VideoLabel video_label() const { return label.value_or(natural_label(kind)); }

    double param(const std::string& key, double fallback) const {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

struct GeneratedTrajectory {
    Trajectory trajectory;
    IntentSignal truth;  // one label per trajectory frame
    VideoLabel video_label;
};

struct GeneratedSkeleton {
    SkeletonSequence skeleton;
    IntentSignal truth;
    VideoLabel video_label;
};

/// One stretch of constant acceleration.
struct Segment {
    double start = 0.0;
    double duration = 0.0;
    Vec3 position;
    Vec3 velocity;
    Vec3 acceleration;
    Intent truth = Intent::unknown;

    Vec3 position_at(double t) const {
        const double tau = t - start;
        return position + tau * velocity + (0.5 * tau * tau) * acceleration;
    }
    Vec3 velocity_at(double t) const { return velocity + (t - start) * acceleration; }
    double end() const { return start + duration; }
};

/// Appends segments while tracking the agent's state at the end of the path.
class PathBuilder {
public:
    PathBuilder(Vec3 start, double g, double dt) : position_(start), g_(g), dt_(dt) {}

    const Vec3& position() const noexcept { return position_; }
    const Vec3& velocity() const noexcept { return velocity_; }
    double time() const noexcept { return time_; }
    double frames_to_seconds(double frames) const { return frames * dt_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }

    /// Instantaneous velocity change (an impulse or an inelastic stop).
    PathBuilder& set_velocity(Vec3 v) {
        velocity_ = v;
        return *this;
    }

    PathBuilder& rest(double seconds, Intent truth) {
        velocity_ = {};
        return coast(seconds, truth);
    }

    /// Keeps the current velocity with no acceleration.
    PathBuilder& coast(double seconds, Intent truth) { return push(seconds, {}, truth); }

    PathBuilder& accelerate(double seconds, Vec3 a, Intent truth) { return push(seconds, a, truth); }

    /// Gravity-only flight for a fixed time.
    PathBuilder& fly(double seconds, Intent truth) { return push(seconds, {0.0, -g_, 0.0}, truth); }

    /// Gravity-only flight until y descends to `ground`; returns the flight time.
    double fly_to(double ground, Intent truth) {
        const double h = position_.y - ground;
        const double vy = velocity_.y;
        const double disc = vy * vy + 2.0 * g_ * h;
        if (disc < 0.0) throw InvalidScenario("ballistic path never reaches the ground");
        const double t = (vy + std::sqrt(disc)) / g_;
        if (!(t > 0.0)) throw InvalidScenario("ballistic flight has zero duration");
        fly(t, truth);
        position_.y = ground;  // remove rounding drift at the contact
        return t;
    }

    /// Total scripted duration in seconds.
    double duration() const { return time_; }

private:
    PathBuilder& push(double seconds, Vec3 a, Intent truth) {
        if (!(seconds > 0.0) || !std::isfinite(seconds)) throw InvalidScenario("segment duration must be positive");
        Segment s{time_, seconds, position_, velocity_, a, truth};
        segments_.push_back(s);
        time_ = s.end();
        position_ = s.position_at(time_);
        velocity_ = s.velocity_at(time_);
        return *this;
    }

    Vec3 position_;
    Vec3 velocity_;
    double g_;
    double dt_;
    double time_ = 0.0;
    std::vector<Segment> segments_;
};

namespace detail {

inline void check_scenario(const Scenario& s) {
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw InvalidScenario("dt must be positive");
    if (!(s.g > 0.0) || !std::isfinite(s.g)) throw InvalidScenario("g must be positive");
    if (!(s.noise_sigma >= 0.0) || !std::isfinite(s.noise_sigma)) {
        throw InvalidScenario("noise_sigma must be non-negative");
    }
    for (const auto& [k, v] : s.params) {
        if (!std::isfinite(v)) throw InvalidScenario("param '" + k + "' is not finite");
    }
}

inline double positive_param(const Scenario& s, const std::string& key, double fallback) {
    const double v = s.param(key, fallback);
    if (!(v > 0.0)) throw InvalidScenario("param '" + key + "' must be positive");
    return v;
}

inline double frames_param(const Scenario& s, const std::string& key, double fallback) {
    const double v = positive_param(s, key, fallback);
    if (v < 1.0) throw InvalidScenario("param '" + key + "' must be at least one frame");
    return v * s.dt;
}

constexpr double kStandingHeight = 1.0;  // COM height of a standing agent

inline void build_projectile(const Scenario& s, PathBuilder& p) {
    constexpr Intent self = Intent::intentional;
    if (s.video_label() == VideoLabel::non_intentional) {
        // Thrown object already in flight at frame 0.
        p.set_velocity({s.param("vx", 2.0), s.param("vy", 5.0), s.param("vz", 0.0)});
        p.fly(frames_param(s, "frames", 120.0), Intent::non_intentional);
        return;
    }
    // Standing long jump.
    p.rest(frames_param(s, "stand_frames", 60.0), self);
    p.set_velocity({s.param("vx", 3.0), positive_param(s, "vy", 3.5), 0.0});
    p.fly_to(kStandingHeight, self);
    p.rest(frames_param(s, "stand_frames", 60.0), self);
}

inline void build_bounce(const Scenario& s, PathBuilder& p) {
    if (s.video_label() == VideoLabel::non_intentional) {
        const double e = s.param("restitution", 0.7);
        if (!(e >= 0.0 && e < 1.0)) throw InvalidScenario("restitution must be in [0, 1)");
        const double total = frames_param(s, "frames", 240.0);
        p.set_velocity({s.param("vx", 0.5), 0.0, 0.0});
        // Ball center; the floor contact is at y = 0.
        constexpr Intent passive = Intent::non_intentional;
        while (p.time() < total) {
            p.fly_to(0.0, passive);
            const Vec3 v = p.velocity();
            const Vec3 after{e * v.x, -e * v.y, e * v.z};
            if (after.y < 0.25 || p.time() >= total) {
                p.rest(std::max(total - p.time(), s.dt), passive);
                break;
            }
            p.set_velocity(after);
        }
        return;
    }
    // Repeated hops with a pause on each landing.
    constexpr Intent self = Intent::intentional;
    const double hop = positive_param(s, "hop_speed", 3.0);
    const auto hops = static_cast<int>(positive_param(s, "hops", 3.0));
    const double pause = frames_param(s, "pause_frames", 20.0);
    p.rest(frames_param(s, "stand_frames", 30.0), self);
    for (int i = 0; i < hops; ++i) {
        p.set_velocity({0.3, hop, 0.0});
        p.fly_to(kStandingHeight, self);
        p.rest(pause, self);
    }
    p.rest(frames_param(s, "stand_frames", 30.0), self);
}

inline void build_incline(const Scenario& s, PathBuilder& p) {
    const double theta_deg = s.param("theta_deg", 30.0);
    if (!(theta_deg > 0.0 && theta_deg < 90.0)) throw InvalidScenario("incline angle must be in (0, 90) degrees");
    const double theta = theta_deg * std::numbers::pi / 180.0;
    const Vec3 down_slope{std::cos(theta), -std::sin(theta), 0.0};
    if (s.video_label() == VideoLabel::non_intentional) {
        // Frictionless slide from rest, then a run-out along the flat floor.
        constexpr Intent passive = Intent::non_intentional;
        p.accelerate(frames_param(s, "slide_frames", 120.0), (s.g * std::sin(theta)) * down_slope, passive);
        p.set_velocity({p.velocity().x, 0.0, 0.0});
        p.coast(frames_param(s, "runout_frames", 40.0), passive);
        return;
    }
    // Walk up the slope at constant speed, then stand at the top.
    constexpr Intent self = Intent::intentional;
    const double speed = positive_param(s, "speed", 1.2);
    p.rest(frames_param(s, "stand_frames", 30.0), self);
    p.set_velocity((-speed) * down_slope);
    p.coast(frames_param(s, "climb_frames", 150.0), self);
    p.rest(frames_param(s, "top_frames", 50.0), self);
}

inline void build_jump_sequence(const Scenario& s, PathBuilder& p) {
    const double stand = frames_param(s, "stand_frames", 60.0);
    if (s.video_label() == VideoLabel::intentional) {
        constexpr Intent self = Intent::intentional;
        const double speed = positive_param(s, "jump_speed", 4.0);
        const auto jumps = static_cast<int>(positive_param(s, "jumps", 1.0));
        p.rest(stand, self);
        for (int i = 0; i < jumps; ++i) {
            p.set_velocity({0.0, speed, 0.0});
            p.fly_to(kStandingHeight, self);
            p.rest(stand, self);
        }
        return;
    }
    // Standing on a trapdoor that gives way.
    const double drop = positive_param(s, "drop", 1.0);
    p.rest(stand, Intent::intentional);
    p.fly_to(kStandingHeight - drop, Intent::non_intentional);
    p.rest(frames_param(s, "rest_frames", 60.0), Intent::non_intentional);
}

inline void build_walk(const Scenario& s, PathBuilder& p) {
    const double speed = positive_param(s, "speed", 1.4);
    if (s.video_label() == VideoLabel::intentional) {
        constexpr Intent self = Intent::intentional;
        p.rest(frames_param(s, "stand_frames", 30.0), self);
        p.set_velocity({speed, 0.0, 0.0});
        p.coast(frames_param(s, "walk_frames", 150.0), self);
        p.rest(frames_param(s, "stand_frames", 40.0), self);
        return;
    }
    // Walks, then collapses where it stands and lies still.
    p.set_velocity({speed, 0.0, 0.0});
    p.coast(frames_param(s, "walk_frames", 100.0), Intent::intentional);
    p.set_velocity({});
    p.fly_to(kStandingHeight - positive_param(s, "collapse", 0.75), Intent::non_intentional);
    p.rest(frames_param(s, "rest_frames", 90.0), Intent::non_intentional);
}

inline void build_walk_trip(const Scenario& s, PathBuilder& p) {
    const double speed = positive_param(s, "speed", 1.4);
    if (s.video_label() == VideoLabel::non_intentional) {
        // Walks, loses footing over an edge, falls, lies still.
        p.set_velocity({speed, 0.0, 0.0});
        p.coast(frames_param(s, "walk_frames", 120.0), Intent::intentional);
        p.fly(frames_param(s, "fall_frames", 30.0), Intent::non_intentional);
        p.rest(frames_param(s, "rest_frames", 60.0), Intent::non_intentional);
        return;
    }
    // Walks, hops over an obstacle and keeps walking.
    constexpr Intent self = Intent::intentional;
    const double walk = frames_param(s, "walk_frames", 100.0);
    p.set_velocity({speed, 0.0, 0.0});
    p.coast(walk, self);
    p.set_velocity({speed, positive_param(s, "hop_speed", 2.5), 0.0});
    p.fly_to(kStandingHeight, self);
    p.set_velocity({speed, 0.0, 0.0});
    p.coast(walk, self);
}

inline void build_fall_and_rest(const Scenario& s, PathBuilder& p) {
    if (s.video_label() == VideoLabel::non_intentional) {
        // Already tumbling off a ledge at frame 0.
        constexpr Intent passive = Intent::non_intentional;
        p.set_velocity({s.param("vx", 0.3), 0.0, 0.0});
        p.fly_to(kStandingHeight - positive_param(s, "height", 1.5), passive);
        p.rest(frames_param(s, "rest_frames", 90.0), passive);
        return;
    }
    // Hops down from a platform, pauses, walks away.
    constexpr Intent self = Intent::intentional;
    p.rest(frames_param(s, "stand_frames", 40.0), self);
    p.set_velocity({1.0, positive_param(s, "hop_speed", 2.0), 0.0});
    p.fly_to(kStandingHeight - positive_param(s, "drop", 1.0), self);
    p.rest(frames_param(s, "pause_frames", 30.0), self);
    p.set_velocity({positive_param(s, "walk_speed", 1.2), 0.0, 0.0});
    p.coast(frames_param(s, "walk_frames", 60.0), self);
}

inline Vec3 start_position(const Scenario& s) {
    switch (s.kind) {
        case ScenarioKind::projectile:
            return {0.0, s.video_label() == VideoLabel::non_intentional ? s.param("height", 10.0) : kStandingHeight,
                    0.0};
        case ScenarioKind::bounce:
            return {0.0, s.video_label() == VideoLabel::non_intentional ? s.param("height", 3.0) : kStandingHeight,
                    0.0};
        case ScenarioKind::incline:
            return {0.0, 5.0, 0.0};
        default:
            return {0.0, kStandingHeight, 0.0};
    }
}

}  // namespace detail

/// The segment script of a scenario (exposed for tests).
inline PathBuilder build_path(const Scenario& s) {
    detail::check_scenario(s);
    PathBuilder p(detail::start_position(s), s.g, s.dt);
    switch (s.kind) {
        case ScenarioKind::projectile: detail::build_projectile(s, p); break;
        case ScenarioKind::bounce: detail::build_bounce(s, p); break;
        case ScenarioKind::incline: detail::build_incline(s, p); break;
        case ScenarioKind::jump_sequence: detail::build_jump_sequence(s, p); break;
        case ScenarioKind::walk: detail::build_walk(s, p); break;
        case ScenarioKind::walk_trip: detail::build_walk_trip(s, p); break;
        case ScenarioKind::fall_and_rest: detail::build_fall_and_rest(s, p); break;
    }
    return p;
}

/// Samples the scripted path at t_i = i dt. Frame i belongs to the segment
/// whose half-open span [start, end) contains t_i.
inline GeneratedTrajectory generate(const Scenario& s) {
    const PathBuilder path = build_path(s);
    const auto& segs = path.segments();
    const auto frames = static_cast<std::size_t>(std::floor(path.duration() / s.dt + 1e-9)) + 1;
    if (frames < 3) throw InvalidScenario("scenario shorter than three frames");

    std::vector<Vec3> positions;
    positions.reserve(frames);
    IntentSignal truth{{}, s.dt, 0};
    truth.labels.reserve(frames);
    std::size_t k = 0;
    for (std::size_t i = 0; i < frames; ++i) {
        const double t = static_cast<double>(i) * s.dt;
        while (k + 1 < segs.size() && t >= segs[k].end()) ++k;
        positions.push_back(segs[k].position_at(std::min(t, segs[k].end())));
        truth.labels.push_back(segs[k].truth);
    }
    if (s.noise_sigma > 0.0) {
        Rng rng(derive_seed({s.seed, 0x401e}));
        for (Vec3& p : positions) {
            p.x += s.noise_sigma * rng.normal();
            p.y += s.noise_sigma * rng.normal();
            p.z += s.noise_sigma * rng.normal();
        }
    }
    return {Trajectory(std::move(positions), s.dt), std::move(truth), s.video_label()};
}

/// Limb motion parameters for generate_skeleton.
struct LimbMotion {
    double amplitude = 0.02;  // meters
    double frequency = 1.2;   // Hz
};

/// Rest-pose offsets shifted so their part-weighted COM is at the origin.
inline std::vector<Vec3> centered_rest_pose(const SkeletonTemplate& tpl) {
    SkeletonSequence one{tpl.joints, {tpl.rest_pose}, 1.0, {}};
    const Vec3 com = center_of_mass(one, tpl.weights)[0];
    std::vector<Vec3> out = tpl.rest_pose;
    for (Vec3& p : out) p = p - com;
    return out;
}

/// Carries the template along the scenario's COM path. Limb oscillations
/// have zero mean within every body part at every frame, so the
/// part-weighted COM of the joints equals the scenario trajectory.
inline GeneratedSkeleton generate_skeleton(const Scenario& s, const SkeletonTemplate& tpl,
                                           LimbMotion limbs = LimbMotion{}) {
    if (tpl.joints.size() != tpl.rest_pose.size() || tpl.joints.empty()) {
        throw InvalidScenario("skeleton template is malformed");
    }
    if (!(limbs.amplitude >= 0.0) || !(limbs.frequency >= 0.0)) {
        throw InvalidScenario("limb motion amplitude and frequency must be non-negative");
    }
    GeneratedTrajectory com = generate(s);
    const std::vector<Vec3> rest = centered_rest_pose(tpl);
    const std::size_t n_joints = tpl.joints.size();

    Rng rng(derive_seed({s.seed, 0x11b5}));
    std::vector<double> amp(n_joints);
    std::vector<double> phase(n_joints);
    for (std::size_t j = 0; j < n_joints; ++j) {
        amp[j] = limbs.amplitude * rng.uniform(0.5, 1.0);
        phase[j] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    std::vector<std::size_t> part_index(n_joints);
    std::array<std::size_t, 3> part_size{};
    for (std::size_t j = 0; j < n_joints; ++j) {
        part_index[j] = static_cast<std::size_t>(tpl.weights.part(tpl.joints[j]));
        ++part_size[part_index[j]];
    }

    SkeletonSequence seq{tpl.joints, {}, s.dt, {}};
    seq.frames.reserve(com.trajectory.size());
    std::vector<Vec3> swing(n_joints);
    for (std::size_t f = 0; f < com.trajectory.size(); ++f) {
        const double t = static_cast<double>(f) * s.dt;
        std::array<Vec3, 3> part_mean{};
        for (std::size_t j = 0; j < n_joints; ++j) {
            const double w = 2.0 * std::numbers::pi * limbs.frequency * t + phase[j];
            swing[j] = {amp[j] * std::sin(w), 0.5 * amp[j] * std::cos(w), 0.0};
            part_mean[part_index[j]] += swing[j];
        }
        for (std::size_t k = 0; k < 3; ++k) {
            if (part_size[k] > 0) part_mean[k] = (1.0 / static_cast<double>(part_size[k])) * part_mean[k];
        }
        std::vector<Vec3> joints(n_joints);
        for (std::size_t j = 0; j < n_joints; ++j) {
            joints[j] = com.trajectory[f] + rest[j] + (swing[j] - part_mean[part_index[j]]);
        }
        seq.frames.push_back(std::move(joints));
    }
    return {std::move(seq), std::move(com.truth), com.video_label};
}

struct CorpusEntry {
    std::string name;  // "<kind>_<index>", unique and lexicographically ordered within a kind
    Scenario scenario;
};

inline constexpr std::size_t kDefaultSuitePerKind = 10;
inline constexpr std::uint64_t kDefaultSuiteSeed = 7;

namespace detail {

/// Per-instance parameter jitter; ranges stay inside the regime each script
/// is meant to show.
inline void jitter(Scenario& s, Rng& rng) {
    auto set = [&](const char* key, double lo, double hi) { s.params[key] = rng.uniform(lo, hi); };
    auto set_frames = [&](const char* key, double lo, double hi) { s.params[key] = std::round(rng.uniform(lo, hi)); };
    const bool passive = s.video_label() == VideoLabel::non_intentional;
    switch (s.kind) {
        case ScenarioKind::projectile:
            if (passive) {
                set("vx", 1.0, 4.0);
                set("vy", 3.0, 6.0);
                set("height", 8.0, 12.0);
                set_frames("frames", 100, 140);
            } else {
                set("vx", 2.0, 4.0);
                set("vy", 3.0, 4.0);
                set_frames("stand_frames", 40, 70);
            }
            break;
        case ScenarioKind::bounce:
            if (passive) {
                set("height", 2.0, 4.0);
                set("vx", 0.0, 1.0);
                set("restitution", 0.5, 0.8);
                set_frames("frames", 200, 260);
            } else {
                set("hop_speed", 2.5, 3.5);
                set_frames("hops", 2, 4);
                set_frames("pause_frames", 15, 30);
            }
            break;
        case ScenarioKind::incline:
            set("theta_deg", 20.0, 40.0);
            if (passive) {
                set_frames("slide_frames", 90, 140);
                set_frames("runout_frames", 30, 50);
            } else {
                set("speed", 0.8, 1.5);
                set_frames("climb_frames", 130, 170);
            }
            break;
        case ScenarioKind::jump_sequence:
            set_frames("stand_frames", 45, 70);
            if (passive) {
                set("drop", 0.8, 1.3);
                set_frames("rest_frames", 50, 80);
            } else {
                set("jump_speed", 3.5, 4.5);
                set_frames("jumps", 1, 2);
            }
            break;
        case ScenarioKind::walk:
            set("speed", 1.0, 1.8);
            if (passive) {
                set_frames("walk_frames", 80, 120);
                set("collapse", 0.6, 0.8);
                set_frames("rest_frames", 70, 110);
            } else {
                set_frames("walk_frames", 120, 180);
            }
            break;
        case ScenarioKind::walk_trip:
            set("speed", 1.0, 1.8);
            if (passive) {
                set_frames("walk_frames", 100, 140);
                set_frames("fall_frames", 24, 34);
                set_frames("rest_frames", 50, 80);
            } else {
                set_frames("walk_frames", 80, 120);
                set("hop_speed", 2.0, 3.0);
            }
            break;
        case ScenarioKind::fall_and_rest:
            if (passive) {
                set("height", 1.2, 2.0);
                set("vx", 0.0, 0.6);
                set_frames("rest_frames", 70, 110);
            } else {
                set("drop", 0.6, 1.2);
                set("hop_speed", 1.5, 2.5);
                set("walk_speed", 1.0, 1.5);
            }
            break;
    }
}

}  // namespace detail

/// Balanced labeled corpus: within each kind, instances alternate between
/// the intentional and the non-intentional script, with jittered params.
inline std::vector<CorpusEntry> benchmark_suite(std::size_t n_per_kind = kDefaultSuitePerKind,
                                                std::uint64_t seed = kDefaultSuiteSeed, double noise_sigma = 0.0) {
    if (n_per_kind == 0) throw InvalidScenario("n_per_kind must be at least 1");
    std::vector<CorpusEntry> out;
    out.reserve(n_per_kind * std::size(kAllScenarioKinds));
    std::size_t kind_index = 0;
    for (ScenarioKind kind : kAllScenarioKinds) {
        for (std::size_t i = 0; i < n_per_kind; ++i) {
            Scenario s;
            s.kind = kind;
            const bool flip = (i + kind_index) % 2 == 1;
            const VideoLabel natural = natural_label(kind);
            s.label = flip ? (natural == VideoLabel::intentional ? VideoLabel::non_intentional : VideoLabel::intentional)
                           : natural;
            s.seed = derive_seed({seed, kind_index, i});
            s.noise_sigma = noise_sigma;
            Rng rng(derive_seed({s.seed, 0x717}));
            detail::jitter(s, rng);
            char index[32];
            std::snprintf(index, sizeof index, "%03zu", i);
            out.push_back({std::string(to_string(kind)) + "_" + index, std::move(s)});
        }
        ++kind_index;
    }
    return out;
}

}  // namespace intentkin
