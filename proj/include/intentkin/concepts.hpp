#pragma once

// The four-concept intentionality pipeline.
//
//   C1  energy gain             -> intentional (+1)
//   C2  constant downward accel -> non-intentional (-1), only where C1 is silent
//   C3  an EFM right after a C1 event is part of that intentional action
//   C4  unknown frames inherit the label of the frame before them
//
// Every stage maps IntentSignal -> IntentSignal on a common frame range.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intentkin/energy.hpp"
#include "intentkin/errors.hpp"
#include "intentkin/kinematics.hpp"

namespace intentkin {

enum class Intent : std::int8_t { non_intentional = -1, unknown = 0, intentional = 1 };

constexpr int to_int(Intent v) { return static_cast<int>(v); }

inline Intent intent_from_int(int v) {
    switch (v) {
        case -1: return Intent::non_intentional;
        case 0: return Intent::unknown;
        case 1: return Intent::intentional;
        default: throw InvalidInput("intent label must be -1, 0 or 1, got " + std::to_string(v));
    }
}

/// Per-frame label series aligned to a source trajectory by `offset`.
struct IntentSignal {
    std::vector<Intent> labels;
    double dt = 1.0;
    std::size_t offset = 0;

    std::size_t size() const noexcept { return labels.size(); }
    Intent operator[](std::size_t i) const { return labels[i]; }
    std::size_t count(Intent v) const { return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), v)); }
    friend bool operator==(const IntentSignal&, const IntentSignal&) = default;

    static IntentSignal from_ints(std::span<const int> values, double dt = 1.0, std::size_t offset = 0) {
        IntentSignal s{{}, dt, offset};
        s.labels.reserve(values.size());
        for (int v : values) s.labels.push_back(intent_from_int(v));
        return s;
    }
    std::vector<int> to_ints() const {
        std::vector<int> out;
        out.reserve(labels.size());
        for (Intent v : labels) out.push_back(to_int(v));
        return out;
    }
};

/// Inclusive frame interval.
struct Interval {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start + 1; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, disjoint intervals.
using IntervalSet = std::vector<Interval>;

inline bool is_well_formed(const IntervalSet& set, std::size_t signal_length) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i].start > set[i].end || set[i].end >= signal_length) return false;
        if (i > 0 && set[i].start <= set[i - 1].end) return false;
    }
    return true;
}

enum class Prior { intentional, non_intentional, unknown };

/// Concept subsets used for ablation.
enum class Variant { c1, c12, c123, c124, full };

inline constexpr Variant kAllVariants[] = {Variant::c1, Variant::c12, Variant::c123, Variant::c124, Variant::full};

constexpr std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::c1: return "c1";
        case Variant::c12: return "c12";
        case Variant::c123: return "c123";
        case Variant::c124: return "c124";
        case Variant::full: return "full";
    }
    return "full";
}

/// Column heading used in ablation reports.
constexpr std::string_view variant_heading(Variant v) {
    switch (v) {
        case Variant::c1: return "1";
        case Variant::c12: return "1+2";
        case Variant::c123: return "1+2+3";
        case Variant::c124: return "1+2+4";
        case Variant::full: return "1+2+3+4";
    }
    return "1+2+3+4";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
    for (Variant v : kAllVariants) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

constexpr std::string_view to_string(Prior p) {
    switch (p) {
        case Prior::intentional: return "intent";
        case Prior::non_intentional: return "nonintent";
        case Prior::unknown: return "unknown";
    }
    return "unknown";
}

inline std::optional<Prior> parse_prior(std::string_view s) {
    if (s == "intent") return Prior::intentional;
    if (s == "nonintent") return Prior::non_intentional;
    if (s == "unknown") return Prior::unknown;
    return std::nullopt;
}

constexpr bool uses_c2(Variant v) { return v != Variant::c1; }
constexpr bool uses_c3(Variant v) { return v == Variant::c123 || v == Variant::full; }
constexpr bool uses_c4(Variant v) { return v == Variant::c124 || v == Variant::full; }

struct ConceptConfig {
    EnergyThreshold energy;          // "dE/dt > 0" test
    double eps_accel = 0.5;          // max deviation of a_y from its window mean, length/s^2
    double c_min = 0.05;             // admissible gravity fraction c in a_y = -c g
    double c_max = 1.5;
    std::size_t constancy_window = 5;
    std::size_t lookback = 5;        // frames searched for a causing C1 event before an EFM
    std::size_t efm_min_len = 3;
    std::size_t median_window = kDefaultMedianWindow;
    Prior prior = Prior::intentional;
    Variant variant = Variant::full;

    void validate() const {
        if (!(energy.floor > 0.0) || !(energy.mad_scale >= 0.0)) {
            throw InvalidInput("energy threshold floor must be positive and MAD scale non-negative");
        }
        if (!(eps_accel > 0.0)) throw InvalidInput("eps_accel must be positive");
        if (!(c_min > 0.0 && c_min < c_max)) throw InvalidInput("require 0 < c_min < c_max");
        if (constancy_window == 0) throw InvalidInput("constancy_window must be at least 1");
        if (lookback == 0) throw InvalidInput("lookback must be at least 1");
        if (efm_min_len == 0) throw InvalidInput("efm_min_len must be at least 1");
        if (median_window == 0) throw InvalidInput("median_window must be at least 1");
    }
};

/// +1 where dE/dt exceeds the resolved energy threshold, else 0.
inline IntentSignal concept1(const ScalarSeries& rate, const ConceptConfig& cfg) {
    const double threshold = cfg.energy.resolve(rate.values);
    IntentSignal out{std::vector<Intent>(rate.size(), Intent::unknown), rate.dt, rate.offset};
    for (std::size_t i = 0; i < rate.size(); ++i) {
        if (!std::isfinite(rate[i])) throw InvalidInput("non-finite energy rate at frame " + std::to_string(i));
        if (rate[i] > threshold) out.labels[i] = Intent::intentional;
    }
    return out;
}

/// Gravity-only motion test (f_C2g): -1 where, over the centered constancy
/// window, C1 is silent, a_y is constant within eps_accel and its mean lies
/// in [-c_max g, -c_min g].
inline IntentSignal detect_efm(const ScalarSeries& a_y, const IntentSignal& i_c1, double g, const ConceptConfig& cfg) {
    require_positive_gravity(g);
    if (a_y.size() != i_c1.size()) throw LengthMismatch(a_y.size(), i_c1.size());
    const std::size_t n = a_y.size();
    IntentSignal out{std::vector<Intent>(n, Intent::unknown), i_c1.dt, i_c1.offset};
    for (std::size_t i = 0; i < n; ++i) {
        const auto [lo, hi] = centered_window(i, n, cfg.constancy_window);
        bool silent = true;
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            silent = silent && i_c1[j] == Intent::unknown;
            sum += a_y[j];
        }
        if (!silent) continue;
        const double mean = sum / static_cast<double>(hi - lo + 1);
        if (mean > -cfg.c_min * g || mean < -cfg.c_max * g) continue;
        double deviation = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) deviation = std::max(deviation, std::abs(a_y[j] - mean));
        if (deviation <= cfg.eps_accel) out.labels[i] = Intent::non_intentional;
    }
    return out;
}

/// Elementwise sum of the gravity test and C1.
inline IntentSignal concept2(const IntentSignal& f_c2g, const IntentSignal& i_c1) {
    if (f_c2g.size() != i_c1.size()) throw LengthMismatch(f_c2g.size(), i_c1.size());
    IntentSignal out = i_c1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (f_c2g[i] != Intent::unknown && i_c1[i] != Intent::unknown) throw OverlapViolation(i);
        out.labels[i] = intent_from_int(to_int(f_c2g[i]) + to_int(i_c1[i]));
    }
    return out;
}

/// Maximal runs of `value` with at least `min_len` frames, in order.
inline IntervalSet extract_intervals(const IntentSignal& signal, Intent value, std::size_t min_len = 1) {
    IntervalSet out;
    std::size_t i = 0;
    while (i < signal.size()) {
        if (signal[i] != value) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < signal.size() && signal[j + 1] == value) ++j;
        if (j - i + 1 >= min_len) out.push_back({i, j});
        i = j + 1;
    }
    return out;
}

/// Relabels an EFM interval +1 when a C1 event falls within `lookback`
/// frames before its start. Intervals starting at frame 0 are left alone.
inline IntentSignal concept3(const IntentSignal& i_c2, const IntentSignal& i_c1, const IntervalSet& s_efm,
                             const ConceptConfig& cfg) {
    if (i_c2.size() != i_c1.size()) throw LengthMismatch(i_c2.size(), i_c1.size());
    if (!is_well_formed(s_efm, i_c2.size())) throw InvalidInput("EFM intervals out of bounds or unordered");
    IntentSignal out = i_c2;
    for (const Interval& s : s_efm) {
        if (s.start == 0) continue;
        const std::size_t first = s.start > cfg.lookback ? s.start - cfg.lookback : 0;
        bool caused = false;
        for (std::size_t t = first; t < s.start; ++t) caused = caused || i_c1[t] == Intent::intentional;
        if (!caused) continue;
        std::fill(out.labels.begin() + static_cast<std::ptrdiff_t>(s.start),
                  out.labels.begin() + static_cast<std::ptrdiff_t>(s.end) + 1, Intent::intentional);
    }
    return out;
}

/// Intentionality inertia: each unknown run takes the label of the frame
/// before it; a leading run takes the prior (or stays unknown).
inline IntentSignal concept4(const IntentSignal& i_c3, const IntervalSet& u_null, Prior prior) {
    if (!is_well_formed(u_null, i_c3.size())) throw InvalidInput("unknown intervals out of bounds or unordered");
    IntentSignal out = i_c3;
    for (const Interval& u : u_null) {
        Intent cause = Intent::unknown;
        if (u.start > 0) {
            cause = i_c3[u.start - 1];
        } else if (prior == Prior::intentional) {
            cause = Intent::intentional;
        } else if (prior == Prior::non_intentional) {
            cause = Intent::non_intentional;
        }
        std::fill(out.labels.begin() + static_cast<std::ptrdiff_t>(u.start),
                  out.labels.begin() + static_cast<std::ptrdiff_t>(u.end) + 1, cause);
    }
    return out;
}

inline IntentSignal concept4(const IntentSignal& i_c3, const ConceptConfig& cfg) {
    return concept4(i_c3, extract_intervals(i_c3, Intent::unknown, 1), cfg.prior);
}

/// Every intermediate signal of one pipeline run, on the common frame range.
struct Analysis {
    EnergyProfile energy;
    ScalarSeries vertical_acceleration;
    double energy_threshold = 0.0;
    IntentSignal c1;
    IntentSignal efm;  // f_C2g, empty for variant c1
    IntentSignal c2;
    IntentSignal c3;
    IntentSignal c4;
    IntervalSet efm_intervals;
    IntervalSet unknown_intervals;
    IntentSignal output;  // labels of the configured variant
};

inline Analysis analyze(const Trajectory& traj, const ConceptConfig& cfg, double g = kStandardGravity) {
    cfg.validate();
    Analysis a;
    a.energy = energy_rate(traj, g, cfg.median_window);
    a.vertical_acceleration = vertical_acceleration(traj);

    // rate and a_y both start at frame 0 and span n-2 frames; trim defensively
    // in case either derivation changes its length.
    const std::size_t n = std::min(a.energy.rate.size(), a.vertical_acceleration.size());
    ScalarSeries rate = a.energy.rate;
    rate.values.resize(n);
    ScalarSeries a_y = a.vertical_acceleration;
    a_y.values.resize(n);

    a.energy_threshold = cfg.energy.resolve(rate.values);
    a.c1 = concept1(rate, cfg);
    a.output = a.c1;
    if (!uses_c2(cfg.variant)) return a;

    a.efm = detect_efm(a_y, a.c1, g, cfg);
    a.c2 = concept2(a.efm, a.c1);
    a.output = a.c2;
    a.efm_intervals = extract_intervals(a.c2, Intent::non_intentional, cfg.efm_min_len);

    const IntentSignal* latest = &a.c2;
    if (uses_c3(cfg.variant)) {
        a.c3 = concept3(a.c2, a.c1, a.efm_intervals, cfg);
        latest = &a.c3;
        a.output = a.c3;
    }
    if (uses_c4(cfg.variant)) {
        a.unknown_intervals = extract_intervals(*latest, Intent::unknown, 1);
        a.c4 = concept4(*latest, a.unknown_intervals, cfg.prior);
        a.output = a.c4;
    }
    return a;
}

/// I(t) = f(p(t)) for the configured variant.
inline IntentSignal infer(const Trajectory& traj, const ConceptConfig& cfg, double g = kStandardGravity) {
    return analyze(traj, cfg, g).output;
}

/// Median-smoothed labels for presentation; never used for decisions.
inline IntentSignal smooth_labels(const IntentSignal& s, std::size_t window = kDefaultMedianWindow) {
    return {median_filter_values<Intent>(s.labels, window), s.dt, s.offset};
}

}  // namespace intentkin
