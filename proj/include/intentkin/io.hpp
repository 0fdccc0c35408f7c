#pragma once

// File formats: trajectory CSV, skeleton / truth / weight-table / result
// JSON, and the on-disk corpus layout.
//
// Doubles are written in shortest round-trip form, so every finite value
// reads back bit-for-bit.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "intentkin/aggregate.hpp"
#include "intentkin/concepts.hpp"
#include "intentkin/errors.hpp"
#include "intentkin/kinematics.hpp"
#include "intentkin/skeleton.hpp"
#include "intentkin/synth.hpp"

namespace intentkin::io {

using json = nlohmann::json;

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

// ---------------------------------------------------------------------------
// Trajectory CSV: header `t,x,y,z`, '#' comment lines, strictly increasing t.
// The writer records the exact frame interval as `# dt=<value>`.

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "# dt=" << format_double(traj.dt()) << '\n';
    os << "t,x,y,z\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const Vec3& p = traj[i];
        os << format_double(traj.time_at(i)) << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
           << format_double(p.z) << '\n';
    }
}

inline Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::optional<double> declared_dt;
    std::vector<double> times;
    std::vector<Vec3> positions;
    while (std::getline(is, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view(line);
        if (view.find_first_not_of(" \t") == std::string_view::npos) continue;
        if (view.front() == '#') {
            const auto pos = view.find("dt=");
            if (pos != std::string_view::npos) {
                declared_dt = parse_double(view.substr(pos + 3));
                if (!declared_dt || !(*declared_dt > 0.0)) {
                    throw SchemaError("line " + std::to_string(line_no) + ": bad dt comment");
                }
            }
            continue;
        }
        if (!have_header) {
            std::string header;
            for (char c : view) {
                if (c != ' ' && c != '\t') header.push_back(c);
            }
            if (header != "t,x,y,z") {
                throw SchemaError("line " + std::to_string(line_no) + ": expected header 't,x,y,z'");
            }
            have_header = true;
            continue;
        }
        double fields[4];
        std::size_t k = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = view.find(',', start);
            const std::string_view cell = view.substr(start, comma == std::string_view::npos ? view.npos : comma - start);
            if (k == 4) throw SchemaError("line " + std::to_string(line_no) + ": expected 4 columns");
            const auto v = parse_double(cell);
            if (!v || !std::isfinite(*v)) {
                throw SchemaError("line " + std::to_string(line_no) + ": column " + std::to_string(k + 1) +
                                  " is not a finite decimal number");
            }
            fields[k++] = *v;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (k != 4) throw SchemaError("line " + std::to_string(line_no) + ": expected 4 columns");
        if (!times.empty() && !(fields[0] > times.back())) {
            throw SchemaError("line " + std::to_string(line_no) + ": t must be strictly increasing");
        }
        times.push_back(fields[0]);
        positions.push_back({fields[1], fields[2], fields[3]});
    }
    if (!have_header) throw SchemaError("trajectory CSV is empty or has no 't,x,y,z' header");
    if (times.empty()) throw SchemaError("trajectory CSV has no samples");

    double dt = 0.0;
    if (declared_dt) {
        dt = *declared_dt;
    } else if (times.size() >= 2) {
        dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    } else {
        throw SchemaError("cannot determine the frame interval from a single sample");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expected = times.front() + static_cast<double>(i) * dt;
        if (std::abs(times[i] - expected) > 1e-3 * dt + 1e-12 * std::abs(expected)) {
            throw SchemaError("sample " + std::to_string(i) + ": time stamps are not uniformly spaced");
        }
    }
    return Trajectory(std::move(positions), dt, times.front());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

inline Trajectory load_trajectory_csv(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return read_trajectory_csv(in);
}

inline void save_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    write_file(path, out.str());
}

inline json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string(what) + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Skeleton JSON: {"fps", "joints", "frames", "visibility"?}

inline json skeleton_to_json(const SkeletonSequence& seq) {
    json j;
    j["fps"] = 1.0 / seq.dt;
    j["joints"] = seq.joint_names;
    json frames = json::array();
    for (const auto& frame : seq.frames) {
        json f = json::array();
        for (const Vec3& p : frame) f.push_back(json::array({p.x, p.y, p.z}));
        frames.push_back(std::move(f));
    }
    j["frames"] = std::move(frames);
    if (!seq.visibility.empty()) {
        json vis = json::array();
        for (const auto& row : seq.visibility) {
            json r = json::array();
            for (std::uint8_t v : row) r.push_back(v != 0);
            vis.push_back(std::move(r));
        }
        j["visibility"] = std::move(vis);
    }
    return j;
}

inline SkeletonSequence skeleton_from_json(const json& j) {
    auto fail = [](const std::string& msg) -> SchemaError { return SchemaError("skeleton JSON: " + msg); };
    if (!j.is_object()) throw fail("top level must be an object");
    for (const char* key : {"fps", "joints", "frames"}) {
        if (!j.contains(key)) throw fail(std::string("missing '") + key + "'");
    }
    if (!j["fps"].is_number() || !(j["fps"].get<double>() > 0.0)) throw fail("'fps' must be a positive number");
    if (!j["joints"].is_array()) throw fail("'joints' must be an array of names");
    SkeletonSequence seq;
    seq.dt = 1.0 / j["fps"].get<double>();
    for (const json& name : j["joints"]) {
        if (!name.is_string()) throw fail("joint names must be strings");
        seq.joint_names.push_back(name.get<std::string>());
    }
    if (!j["frames"].is_array()) throw fail("'frames' must be an array");
    const std::size_t n_joints = seq.joint_names.size();
    for (std::size_t f = 0; f < j["frames"].size(); ++f) {
        const json& frame = j["frames"][f];
        if (!frame.is_array() || frame.size() != n_joints) {
            throw fail("frame " + std::to_string(f) + " must list " + std::to_string(n_joints) + " joints");
        }
        std::vector<Vec3> pts;
        pts.reserve(n_joints);
        for (const json& p : frame) {
            if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number()) {
                throw fail("frame " + std::to_string(f) + ": joints must be [x, y, z] numbers");
            }
            pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
        seq.frames.push_back(std::move(pts));
    }
    if (j.contains("visibility") && !j["visibility"].is_null()) {
        const json& vis = j["visibility"];
        if (!vis.is_array() || vis.size() != seq.frames.size()) throw fail("'visibility' must have one row per frame");
        for (const json& row : vis) {
            if (!row.is_array() || row.size() != n_joints) throw fail("visibility rows must have one flag per joint");
            std::vector<std::uint8_t> r;
            for (const json& v : row) {
                if (!v.is_boolean()) throw fail("visibility flags must be booleans");
                r.push_back(v.get<bool>() ? 1 : 0);
            }
            seq.visibility.push_back(std::move(r));
        }
    }
    try {
        seq.validate();
    } catch (const InvalidInput& e) {
        throw fail(e.what());
    }
    return seq;
}

inline SkeletonSequence load_skeleton_json(const std::filesystem::path& path) {
    return skeleton_from_json(parse_json(read_file(path), path.string()));
}

// ---------------------------------------------------------------------------
// Truth JSON: {"video_label", "frame_labels"?}

struct Truth {
    VideoLabel video_label = VideoLabel::intentional;
    std::optional<std::vector<int>> frame_labels;
};

inline json truth_to_json(const Truth& t) {
    json j;
    j["video_label"] = std::string(to_string(t.video_label));
    if (t.frame_labels) j["frame_labels"] = *t.frame_labels;
    return j;
}

inline Truth truth_from_json(const json& j) {
    if (!j.is_object() || !j.contains("video_label") || !j["video_label"].is_string()) {
        throw SchemaError("truth JSON: missing string 'video_label'");
    }
    Truth t;
    const auto label = parse_video_label(j["video_label"].get<std::string>());
    if (!label) throw SchemaError("truth JSON: video_label must be 'intentional' or 'non-intentional'");
    t.video_label = *label;
    if (j.contains("frame_labels") && !j["frame_labels"].is_null()) {
        if (!j["frame_labels"].is_array()) throw SchemaError("truth JSON: 'frame_labels' must be an array");
        std::vector<int> labels;
        for (const json& v : j["frame_labels"]) {
            if (!v.is_number_integer()) throw SchemaError("truth JSON: frame labels must be integers");
            const int x = v.get<int>();
            if (x < -1 || x > 1) throw SchemaError("truth JSON: frame labels must be -1, 0 or 1");
            labels.push_back(x);
        }
        t.frame_labels = std::move(labels);
    }
    return t;
}

inline Truth load_truth_json(const std::filesystem::path& path) {
    return truth_from_json(parse_json(read_file(path), path.string()));
}

// ---------------------------------------------------------------------------
// Weight table JSON: {"parts": {"legs": w, ...}, "joints": {"Hips": "torso", ...}}

inline json weights_to_json(const WeightTable& w) {
    json parts = json::object();
    for (const auto& [part, weight] : w.part_weight) parts[std::string(to_string(part))] = weight;
    json joints = json::object();
    for (const auto& [joint, part] : w.part_of) joints[joint] = std::string(to_string(part));
    return json{{"parts", parts}, {"joints", joints}};
}

inline WeightTable weights_from_json(const json& j) {
    if (!j.is_object() || !j.contains("parts") || !j.contains("joints") || !j["parts"].is_object() ||
        !j["joints"].is_object()) {
        throw SchemaError("weight table: expected objects 'parts' and 'joints'");
    }
    WeightTable w;
    for (const auto& [name, value] : j["parts"].items()) {
        const auto part = parse_body_part(name);
        if (!part) throw SchemaError("weight table: unknown body part '" + name + "'");
        if (!value.is_number()) throw SchemaError("weight table: weight of '" + name + "' must be a number");
        w.part_weight[*part] = value.get<double>();
    }
    for (const auto& [joint, value] : j["joints"].items()) {
        const auto part = value.is_string() ? parse_body_part(value.get<std::string>()) : std::nullopt;
        if (!part) throw SchemaError("weight table: joint '" + joint + "' maps to an unknown part");
        w.part_of[joint] = *part;
    }
    try {
        w.validate();
    } catch (const InvalidInput& e) {
        throw SchemaError(std::string("weight table: ") + e.what());
    }
    return w;
}

inline WeightTable load_weights_json(const std::filesystem::path& path) {
    return weights_from_json(parse_json(read_file(path), path.string()));
}

// ---------------------------------------------------------------------------
// Result JSON

inline json intervals_to_json(const IntervalSet& set) {
    json out = json::array();
    for (const Interval& s : set) out.push_back(json::array({s.start, s.end}));
    return out;
}

inline json decision_to_json(const VideoDecision& d) {
    json j{{"label", std::string(to_string(d.label))}, {"score", d.score}, {"mode", std::string(to_string(d.mode))}};
    if (d.mode == AggregationMode::threshold) j["threshold"] = d.threshold;
    return j;
}

inline json result_to_json(const Analysis& a, const VideoDecision& decision, const ConceptConfig& cfg, double g,
                           std::optional<IntentSignal> smoothed = std::nullopt) {
    json j;
    j["frame_labels"] = a.output.to_ints();
    j["frame_offset"] = a.output.offset;
    j["dt"] = a.output.dt;
    j["variant"] = std::string(to_string(cfg.variant));
    j["prior"] = std::string(to_string(cfg.prior));
    j["g"] = g;
    j["intervals"] = {{"efm", intervals_to_json(a.efm_intervals)}, {"unknown", intervals_to_json(a.unknown_intervals)}};
    j["video"] = decision_to_json(decision);
    j["diagnostics"] = {
        {"E", a.energy.total.values},
        {"E_filtered", a.energy.filtered_total.values},
        {"dE", a.energy.rate.values},
        {"a_y", a.vertical_acceleration.values},
        {"energy_threshold", a.energy_threshold},
    };
    if (smoothed) j["smoothed_labels"] = smoothed->to_ints();
    return j;
}

// ---------------------------------------------------------------------------
// Corpus layout: <dir>/manifest.json plus, per sequence <name>,
// <name>.csv, <name>.truth.json and optionally <name>.skeleton.json.

inline constexpr std::string_view kTruthSuffix = ".truth.json";
inline constexpr std::string_view kSkeletonSuffix = ".skeleton.json";

inline json scenario_to_json(const Scenario& s) {
    json j;
    j["kind"] = std::string(to_string(s.kind));
    j["video_label"] = std::string(to_string(s.video_label()));
    j["params"] = s.params;
    j["g"] = s.g;
    j["dt"] = s.dt;
    j["seed"] = s.seed;
    j["noise_sigma"] = s.noise_sigma;
    return j;
}

struct CorpusOptions {
    bool skeletons = false;
    std::string skeleton_template = "mocap21";
};

inline std::string dump(const json& j) { return j.dump(1) + "\n"; }

inline void write_sequence(const std::filesystem::path& dir, const std::string& name, const Scenario& scenario,
                           const CorpusOptions& options) {
    const GeneratedTrajectory gen = generate(scenario);
    save_trajectory_csv(dir / (name + ".csv"), gen.trajectory);
    write_file(dir / (name + std::string(kTruthSuffix)),
               dump(truth_to_json({gen.video_label, gen.truth.to_ints()})));
    if (options.skeletons) {
        const auto tpl = find_template(options.skeleton_template);
        if (!tpl) throw InvalidScenario("unknown skeleton template '" + options.skeleton_template + "'");
        const GeneratedSkeleton skel = generate_skeleton(scenario, *tpl);
        write_file(dir / (name + std::string(kSkeletonSuffix)), dump(skeleton_to_json(skel.skeleton)));
    }
}

inline void write_corpus(const std::filesystem::path& dir, const std::vector<CorpusEntry>& entries,
                         std::size_t n_per_kind, std::uint64_t seed, const CorpusOptions& options) {
    std::filesystem::create_directories(dir);
    json manifest;
    manifest["format"] = "intentkin-corpus";
    manifest["version"] = 1;
    manifest["n_per_kind"] = n_per_kind;
    manifest["seed"] = seed;
    manifest["skeletons"] = options.skeletons;
    if (options.skeletons) manifest["skeleton_template"] = options.skeleton_template;
    json seqs = json::array();
    for (const CorpusEntry& e : entries) {
        write_sequence(dir, e.name, e.scenario, options);
        json s = scenario_to_json(e.scenario);
        s["name"] = e.name;
        seqs.push_back(std::move(s));
    }
    manifest["sequences"] = std::move(seqs);
    write_file(dir / "manifest.json", dump(manifest));
}

/// Sequence names of a corpus directory (one per truth file), sorted.
inline std::vector<std::string> list_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw SchemaError("'" + dir.string() + "' is not a directory");
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string file = entry.path().filename().string();
        if (entry.is_regular_file() && file.ends_with(kTruthSuffix)) {
            names.push_back(file.substr(0, file.size() - kTruthSuffix.size()));
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace intentkin::io
