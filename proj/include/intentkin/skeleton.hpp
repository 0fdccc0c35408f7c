#pragma once

// Skeleton sequences, body-part weight tables, center-of-mass estimation
// and keypoint occlusion.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intentkin/errors.hpp"
#include "intentkin/kinematics.hpp"
#include "intentkin/random.hpp"

namespace intentkin {

enum class BodyPart { legs, torso, arms };

inline constexpr BodyPart kAllParts[] = {BodyPart::legs, BodyPart::torso, BodyPart::arms};

constexpr std::string_view to_string(BodyPart p) {
    switch (p) {
        case BodyPart::legs: return "legs";
        case BodyPart::torso: return "torso";
        case BodyPart::arms: return "arms";
    }
    return "torso";
}

inline std::optional<BodyPart> parse_body_part(std::string_view s) {
    for (BodyPart p : kAllParts) {
        if (to_string(p) == s) return p;
    }
    return std::nullopt;
}

/// Joint-to-part map plus the mass fraction of each part.
struct WeightTable {
    std::map<std::string, BodyPart> part_of;
    std::map<BodyPart, double> part_weight;

    void validate() const {
        double total = 0.0;
        for (const auto& [part, w] : part_weight) {
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw InvalidInput("weight of part '" + std::string(to_string(part)) + "' must be positive");
            }
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw InvalidInput("part weights must sum to 1, got " + std::to_string(total));
        }
        for (const auto& [joint, part] : part_of) {
            if (!part_weight.contains(part)) {
                throw InvalidInput("joint '" + joint + "' maps to part '" + std::string(to_string(part)) +
                                   "' which has no weight");
            }
        }
    }

    BodyPart part(const std::string& joint) const {
        const auto it = part_of.find(joint);
        if (it == part_of.end()) throw InvalidInput("joint '" + joint + "' has no body part in the weight table");
        return it->second;
    }
};

/// Per-frame named 3D joints. visibility[f][j] == 0 marks an occluded joint.
struct SkeletonSequence {
    std::vector<std::string> joint_names;
    std::vector<std::vector<Vec3>> frames;
    double dt = 1.0 / 60.0;
    std::vector<std::vector<std::uint8_t>> visibility;

    std::size_t joint_count() const noexcept { return joint_names.size(); }
    std::size_t frame_count() const noexcept { return frames.size(); }

    bool visible(std::size_t frame, std::size_t joint) const {
        return visibility.empty() || visibility[frame][joint] != 0;
    }

    /// Materializes an all-visible mask if none is present.
    void ensure_visibility() {
        if (visibility.empty()) {
            visibility.assign(frames.size(), std::vector<std::uint8_t>(joint_names.size(), 1));
        }
    }

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("skeleton dt must be positive and finite");
        if (joint_names.empty()) throw InvalidInput("skeleton has no joints");
        for (std::size_t f = 0; f < frames.size(); ++f) {
            if (frames[f].size() != joint_names.size()) {
                throw InvalidInput("frame " + std::to_string(f) + " has " + std::to_string(frames[f].size()) +
                                   " joints, expected " + std::to_string(joint_names.size()));
            }
            for (const Vec3& p : frames[f]) {
                if (!p.finite()) throw InvalidInput("non-finite joint position in frame " + std::to_string(f));
            }
        }
        if (!visibility.empty()) {
            if (visibility.size() != frames.size()) throw InvalidInput("visibility has wrong frame count");
            for (std::size_t f = 0; f < visibility.size(); ++f) {
                if (visibility[f].size() != joint_names.size()) {
                    throw InvalidInput("visibility frame " + std::to_string(f) + " has wrong joint count");
                }
            }
        }
    }
};

/// Part centroid = mean of the visible joints of the part; COM = sum of
/// part weight times part centroid over the parts that have joints.
inline Trajectory center_of_mass(const SkeletonSequence& seq, const WeightTable& w) {
    seq.validate();
    w.validate();
    std::vector<BodyPart> part_of_joint;
    part_of_joint.reserve(seq.joint_count());
    std::map<BodyPart, std::size_t> joints_in_part;
    for (const std::string& name : seq.joint_names) {
        part_of_joint.push_back(w.part(name));
        ++joints_in_part[part_of_joint.back()];
    }
    // Renormalize over the parts this skeleton actually has.
    double present_weight = 0.0;
    for (const auto& [part, count] : joints_in_part) present_weight += w.part_weight.at(part);

    std::vector<Vec3> com;
    com.reserve(seq.frame_count());
    for (std::size_t f = 0; f < seq.frame_count(); ++f) {
        std::array<Vec3, 3> sum{};
        std::array<std::size_t, 3> count{};
        for (std::size_t j = 0; j < seq.joint_count(); ++j) {
            if (!seq.visible(f, j)) continue;
            const auto k = static_cast<std::size_t>(part_of_joint[j]);
            sum[k] += seq.frames[f][j];
            ++count[k];
        }
        Vec3 c{};
        for (const auto& [part, n_joints] : joints_in_part) {
            const auto k = static_cast<std::size_t>(part);
            if (count[k] == 0) throw DegenerateFrame(f, std::string(to_string(part)));
            c += (w.part_weight.at(part) / present_weight / static_cast<double>(count[k])) * sum[k];
        }
        com.push_back(c);
    }
    return Trajectory(std::move(com), seq.dt);
}

enum class OcclusionMode { none, all_samples, per_agent, per_frame };

inline constexpr OcclusionMode kAllOcclusionModes[] = {OcclusionMode::none, OcclusionMode::all_samples,
                                                       OcclusionMode::per_agent, OcclusionMode::per_frame};

constexpr std::string_view to_string(OcclusionMode m) {
    switch (m) {
        case OcclusionMode::none: return "none";
        case OcclusionMode::all_samples: return "all";
        case OcclusionMode::per_agent: return "agent";
        case OcclusionMode::per_frame: return "frame";
    }
    return "none";
}

constexpr std::string_view occlusion_heading(OcclusionMode m) {
    switch (m) {
        case OcclusionMode::none: return "None";
        case OcclusionMode::all_samples: return "1 joint all sample";
        case OcclusionMode::per_agent: return "1 joint per agent";
        case OcclusionMode::per_frame: return "1 joint per frame";
    }
    return "None";
}

inline std::optional<OcclusionMode> parse_occlusion(std::string_view s) {
    for (OcclusionMode m : kAllOcclusionModes) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

/// Hides one joint: the same joint for every sequence of a batch
/// (all_samples, drawn from `seed` alone), one joint per sequence
/// (per_agent, drawn from `seed` and `sequence_index`), or one joint per
/// frame (per_frame). Coordinates are never modified.
inline SkeletonSequence occlude(SkeletonSequence seq, OcclusionMode mode, std::uint64_t seed,
                                std::uint64_t sequence_index = 0) {
    seq.validate();
    if (mode == OcclusionMode::none) return seq;
    if (seq.joint_count() < 2) throw InvalidInput("occlusion needs at least two joints");
    seq.ensure_visibility();
    const std::uint64_t n = seq.joint_count();
    switch (mode) {
        case OcclusionMode::all_samples: {
            Rng rng(derive_seed({seed, 0xa11}));
            const std::size_t j = rng.below(n);
            for (auto& row : seq.visibility) row[j] = 0;
            break;
        }
        case OcclusionMode::per_agent: {
            Rng rng(derive_seed({seed, 0xa6e, sequence_index}));
            const std::size_t j = rng.below(n);
            for (auto& row : seq.visibility) row[j] = 0;
            break;
        }
        case OcclusionMode::per_frame: {
            Rng rng(derive_seed({seed, 0xf4a, sequence_index}));
            for (auto& row : seq.visibility) row[rng.below(n)] = 0;
            break;
        }
        case OcclusionMode::none: break;
    }
    return seq;
}

/// Named joints with a standing rest pose (meters, y up, facing +x, left = +z).
struct SkeletonTemplate {
    std::string name;
    std::vector<std::string> joints;
    std::vector<Vec3> rest_pose;
    WeightTable weights;
};

/// Default part weights, from standard anthropometric segment-mass tables.
inline std::map<BodyPart, double> default_part_weights() {
    return {{BodyPart::legs, 0.35}, {BodyPart::torso, 0.50}, {BodyPart::arms, 0.15}};
}

namespace detail {
struct JointSpec {
    const char* name;
    BodyPart part;
    Vec3 rest;
};

inline SkeletonTemplate make_template(std::string name, std::span<const JointSpec> specs) {
    SkeletonTemplate t;
    t.name = std::move(name);
    t.weights.part_weight = default_part_weights();
    for (const JointSpec& s : specs) {
        t.joints.emplace_back(s.name);
        t.rest_pose.push_back(s.rest);
        t.weights.part_of.emplace(s.name, s.part);
    }
    return t;
}
}  // namespace detail

/// 21-joint motion-capture skeleton.
inline SkeletonTemplate mocap21_template() {
    using enum BodyPart;
    static constexpr detail::JointSpec specs[] = {
        {"Hips", torso, {0.0, 1.00, 0.0}},
        {"Spine", torso, {0.0, 1.12, 0.0}},
        {"Spine1", torso, {0.0, 1.27, 0.0}},
        {"Neck", torso, {0.0, 1.50, 0.0}},
        {"Head", torso, {0.02, 1.65, 0.0}},
        {"LeftShoulder", arms, {0.0, 1.45, 0.08}},
        {"LeftArm", arms, {0.0, 1.43, 0.19}},
        {"LeftForeArm", arms, {0.0, 1.15, 0.22}},
        {"LeftHand", arms, {0.02, 0.90, 0.23}},
        {"RightShoulder", arms, {0.0, 1.45, -0.08}},
        {"RightArm", arms, {0.0, 1.43, -0.19}},
        {"RightForeArm", arms, {0.0, 1.15, -0.22}},
        {"RightHand", arms, {0.02, 0.90, -0.23}},
        {"LeftUpLeg", legs, {0.0, 0.95, 0.10}},
        {"LeftLeg", legs, {0.01, 0.52, 0.10}},
        {"LeftFoot", legs, {0.0, 0.08, 0.10}},
        {"LeftToeBase", legs, {0.13, 0.02, 0.11}},
        {"RightUpLeg", legs, {0.0, 0.95, -0.10}},
        {"RightLeg", legs, {0.01, 0.52, -0.10}},
        {"RightFoot", legs, {0.0, 0.08, -0.10}},
        {"RightToeBase", legs, {0.13, 0.02, -0.11}},
    };
    return detail::make_template("mocap21", specs);
}

/// 25-keypoint pose-estimation skeleton (OpenPose BODY_25 naming).
inline SkeletonTemplate body25_template() {
    using enum BodyPart;
    static constexpr detail::JointSpec specs[] = {
        {"Nose", torso, {0.09, 1.62, 0.0}},
        {"Neck", torso, {0.0, 1.50, 0.0}},
        {"RShoulder", arms, {0.0, 1.45, -0.18}},
        {"RElbow", arms, {0.0, 1.17, -0.22}},
        {"RWrist", arms, {0.02, 0.92, -0.23}},
        {"LShoulder", arms, {0.0, 1.45, 0.18}},
        {"LElbow", arms, {0.0, 1.17, 0.22}},
        {"LWrist", arms, {0.02, 0.92, 0.23}},
        {"MidHip", torso, {0.0, 0.98, 0.0}},
        {"RHip", legs, {0.0, 0.95, -0.10}},
        {"RKnee", legs, {0.01, 0.52, -0.10}},
        {"RAnkle", legs, {0.0, 0.09, -0.10}},
        {"LHip", legs, {0.0, 0.95, 0.10}},
        {"LKnee", legs, {0.01, 0.52, 0.10}},
        {"LAnkle", legs, {0.0, 0.09, 0.10}},
        {"REye", torso, {0.07, 1.67, -0.03}},
        {"LEye", torso, {0.07, 1.67, 0.03}},
        {"REar", torso, {0.0, 1.65, -0.07}},
        {"LEar", torso, {0.0, 1.65, 0.07}},
        {"LBigToe", legs, {0.15, 0.02, 0.11}},
        {"LSmallToe", legs, {0.13, 0.02, 0.14}},
        {"LHeel", legs, {-0.04, 0.03, 0.10}},
        {"RBigToe", legs, {0.15, 0.02, -0.11}},
        {"RSmallToe", legs, {0.13, 0.02, -0.14}},
        {"RHeel", legs, {-0.04, 0.03, -0.10}},
    };
    return detail::make_template("body25", specs);
}

inline std::optional<SkeletonTemplate> find_template(std::string_view name) {
    if (name == "mocap21") return mocap21_template();
    if (name == "body25") return body25_template();
    return std::nullopt;
}

/// The built-in weight table that maps every joint of `joint_names`, if any.
inline std::optional<WeightTable> preset_weights_for(std::span<const std::string> joint_names) {
    for (const SkeletonTemplate& t : {mocap21_template(), body25_template()}) {
        bool covers = true;
        for (const std::string& j : joint_names) covers = covers && t.weights.part_of.contains(j);
        if (covers) return t.weights;
    }
    return std::nullopt;
}

}  // namespace intentkin
