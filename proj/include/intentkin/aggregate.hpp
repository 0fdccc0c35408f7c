#pragma once

// Video-level decisions from per-frame labels, and batch scoring.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "intentkin/concepts.hpp"
#include "intentkin/errors.hpp"

namespace intentkin {

enum class VideoLabel { intentional, non_intentional };

constexpr std::string_view to_string(VideoLabel v) {
    return v == VideoLabel::intentional ? "intentional" : "non-intentional";
}

inline std::optional<VideoLabel> parse_video_label(std::string_view s) {
    if (s == "intentional") return VideoLabel::intentional;
    if (s == "non-intentional") return VideoLabel::non_intentional;
    return std::nullopt;
}

enum class AggregationMode { sum, threshold };

constexpr std::string_view to_string(AggregationMode m) { return m == AggregationMode::sum ? "sum" : "threshold"; }

/// What to do with unknown frames. Ablated pipelines (no C4) still produce
/// them; those are scored by letting unknowns contribute nothing.
enum class UnknownPolicy { reject, ignore };

inline constexpr std::int64_t kDefaultThresholdFrames = 40;

struct VideoDecision {
    VideoLabel label = VideoLabel::intentional;
    std::int64_t score = 0;  // signed label sum (sum) or count of -1 frames (threshold)
    AggregationMode mode = AggregationMode::sum;
    std::int64_t threshold = 0;  // only meaningful for mode == threshold
};

namespace detail {
inline void check_labeled(const IntentSignal& s, UnknownPolicy policy) {
    if (policy == UnknownPolicy::reject) {
        const std::size_t unknown = s.count(Intent::unknown);
        if (unknown > 0) throw UnlabeledFrames(unknown);
    }
}
}  // namespace detail

/// Intentional iff the sum of labels over all agents and frames is > 0.
inline VideoDecision decide_sum(std::span<const IntentSignal> agents, UnknownPolicy policy = UnknownPolicy::reject) {
    std::int64_t score = 0;
    for (const IntentSignal& s : agents) {
        detail::check_labeled(s, policy);
        for (Intent v : s.labels) score += to_int(v);
    }
    return {score > 0 ? VideoLabel::intentional : VideoLabel::non_intentional, score, AggregationMode::sum, 0};
}

/// Non-intentional iff strictly more than `min_frames` frames are labeled -1.
inline VideoDecision decide_threshold(const IntentSignal& signal, std::int64_t min_frames = kDefaultThresholdFrames,
                                      UnknownPolicy policy = UnknownPolicy::reject) {
    if (min_frames < 0) throw InvalidInput("threshold must be non-negative");
    detail::check_labeled(signal, policy);
    const auto score = static_cast<std::int64_t>(signal.count(Intent::non_intentional));
    return {score > min_frames ? VideoLabel::non_intentional : VideoLabel::intentional, score,
            AggregationMode::threshold, min_frames};
}

/// A threshold given in seconds, rounded to whole frames at the signal's frame rate.
inline std::int64_t threshold_frames_from_seconds(double seconds, double dt) {
    if (!(seconds >= 0.0) || !(dt > 0.0)) throw InvalidInput("threshold seconds must be >= 0 and dt > 0");
    return static_cast<std::int64_t>(std::llround(seconds / dt));
}

inline VideoDecision decide(const IntentSignal& signal, AggregationMode mode, std::int64_t threshold_frames,
                            UnknownPolicy policy = UnknownPolicy::reject) {
    if (mode == AggregationMode::sum) return decide_sum(std::span<const IntentSignal>(&signal, 1), policy);
    return decide_threshold(signal, threshold_frames, policy);
}

/// Confusion counts use intentional as the positive class.
struct Metrics {
    std::size_t n = 0;
    std::size_t correct = 0;
    double accuracy = 0.0;
    std::size_t true_intentional = 0;
    std::size_t false_intentional = 0;  // predicted intentional, truth non-intentional
    std::size_t true_non_intentional = 0;
    std::size_t false_non_intentional = 0;
    std::optional<double> intentional_accuracy;      // recall on intentional videos
    std::optional<double> non_intentional_accuracy;  // recall on non-intentional videos
};

inline Metrics score_batch(std::span<const VideoLabel> predicted, std::span<const VideoLabel> truth) {
    if (predicted.size() != truth.size()) throw LengthMismatch(predicted.size(), truth.size());
    Metrics m;
    m.n = truth.size();
    for (std::size_t i = 0; i < m.n; ++i) {
        const bool pred_int = predicted[i] == VideoLabel::intentional;
        const bool true_int = truth[i] == VideoLabel::intentional;
        if (pred_int && true_int) ++m.true_intentional;
        if (pred_int && !true_int) ++m.false_intentional;
        if (!pred_int && !true_int) ++m.true_non_intentional;
        if (!pred_int && true_int) ++m.false_non_intentional;
    }
    m.correct = m.true_intentional + m.true_non_intentional;
    const std::size_t errors = m.n - m.correct;
    m.accuracy = m.n == 0 ? 0.0 : 1.0 - static_cast<double>(errors) / static_cast<double>(m.n);
    const std::size_t n_int = m.true_intentional + m.false_non_intentional;
    const std::size_t n_non = m.true_non_intentional + m.false_intentional;
    if (n_int > 0) m.intentional_accuracy = static_cast<double>(m.true_intentional) / static_cast<double>(n_int);
    if (n_non > 0) {
        m.non_intentional_accuracy = static_cast<double>(m.true_non_intentional) / static_cast<double>(n_non);
    }
    return m;
}

inline Metrics score_batch(std::span<const VideoDecision> predictions, std::span<const VideoLabel> truth) {
    std::vector<VideoLabel> labels;
    labels.reserve(predictions.size());
    for (const VideoDecision& d : predictions) labels.push_back(d.label);
    return score_batch(std::span<const VideoLabel>(labels), truth);
}

}  // namespace intentkin
