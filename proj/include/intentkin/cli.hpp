#pragma once

// Run configuration and the infer / synth / eval commands. Each command
// returns a process exit code; diagnostics go to the `err` stream.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "intentkin/aggregate.hpp"
#include "intentkin/concepts.hpp"
#include "intentkin/errors.hpp"
#include "intentkin/io.hpp"
#include "intentkin/random.hpp"
#include "intentkin/skeleton.hpp"
#include "intentkin/svg.hpp"
#include "intentkin/synth.hpp"

namespace intentkin::cli {

namespace fs = std::filesystem;
using io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitDegenerate = 3;

struct RunConfig {
    ConceptConfig concepts;
    double g = kStandardGravity;
    AggregationMode agg = AggregationMode::threshold;
    std::int64_t agg_threshold = kDefaultThresholdFrames;
    std::string weights_path;  // empty: built-in table matching the joint names
    OcclusionMode occlusion = OcclusionMode::none;
    std::uint64_t seed = 0;
    std::string svg_path;
    std::size_t smooth_window = 0;  // 0: no smoothed labels in the result

    void validate() const {
        concepts.validate();
        require_positive_gravity(g);
        if (agg_threshold < 0) throw InvalidInput("agg_threshold must be non-negative");
    }
};

// ---------------------------------------------------------------------------
// Config file

namespace detail {

template <typename T>
T get_as(const json& j, const std::string& key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw SchemaError("config: '" + key + "' has the wrong type");
    }
}

inline std::size_t get_count(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw SchemaError("config: '" + key + "' must be a non-negative integer");
    return j.at(key).get<std::size_t>();
}

template <typename E>
E get_enum(const json& j, const std::string& key, std::optional<E> (*parse)(std::string_view)) {
    const auto parsed = parse(get_as<std::string>(j, key));
    if (!parsed) throw SchemaError("config: '" + key + "' has an unknown value");
    return *parsed;
}

inline std::optional<AggregationMode> parse_agg(std::string_view s) {
    if (s == "sum") return AggregationMode::sum;
    if (s == "threshold") return AggregationMode::threshold;
    return std::nullopt;
}

}  // namespace detail

inline std::optional<AggregationMode> parse_aggregation(std::string_view s) { return detail::parse_agg(s); }

/// Applies the keys of a config object on top of `cfg`. Unknown keys are errors.
inline RunConfig apply_config_json(const json& j, RunConfig cfg) {
    using namespace detail;
    if (!j.is_object()) throw SchemaError("config: top level must be an object");
    for (const auto& [key, value] : j.items()) {
        if (key == "variant") cfg.concepts.variant = get_enum<Variant>(j, key, parse_variant);
        else if (key == "prior") cfg.concepts.prior = get_enum<Prior>(j, key, parse_prior);
        else if (key == "g") cfg.g = get_as<double>(j, key);
        else if (key == "median_window") cfg.concepts.median_window = get_count(j, key);
        else if (key == "agg") cfg.agg = get_enum<AggregationMode>(j, key, parse_agg);
        else if (key == "agg_threshold") cfg.agg_threshold = static_cast<std::int64_t>(get_count(j, key));
        else if (key == "weights") cfg.weights_path = get_as<std::string>(j, key);
        else if (key == "occlude") cfg.occlusion = get_enum<OcclusionMode>(j, key, parse_occlusion);
        else if (key == "seed") cfg.seed = get_count(j, key);
        else if (key == "svg") cfg.svg_path = get_as<std::string>(j, key);
        else if (key == "smooth_window") cfg.smooth_window = get_count(j, key);
        else if (key == "energy_floor") cfg.concepts.energy.floor = get_as<double>(j, key);
        else if (key == "energy_mad_scale") cfg.concepts.energy.mad_scale = get_as<double>(j, key);
        else if (key == "eps_accel") cfg.concepts.eps_accel = get_as<double>(j, key);
        else if (key == "c_min") cfg.concepts.c_min = get_as<double>(j, key);
        else if (key == "c_max") cfg.concepts.c_max = get_as<double>(j, key);
        else if (key == "constancy_window") cfg.concepts.constancy_window = get_count(j, key);
        else if (key == "lookback") cfg.concepts.lookback = get_count(j, key);
        else if (key == "efm_min_len") cfg.concepts.efm_min_len = get_count(j, key);
        else throw SchemaError("config: unknown key '" + key + "'");
    }
    return cfg;
}

inline RunConfig load_config(const fs::path& path, RunConfig base = {}) {
    return apply_config_json(io::parse_json(io::read_file(path), path.string()), std::move(base));
}

inline json config_to_json(const RunConfig& cfg) {
    const ConceptConfig& c = cfg.concepts;
    return {
        {"variant", std::string(to_string(c.variant))},
        {"prior", std::string(to_string(c.prior))},
        {"g", cfg.g},
        {"median_window", c.median_window},
        {"agg", std::string(to_string(cfg.agg))},
        {"agg_threshold", cfg.agg_threshold},
        {"weights", cfg.weights_path},
        {"occlude", std::string(to_string(cfg.occlusion))},
        {"seed", cfg.seed},
        {"smooth_window", cfg.smooth_window},
        {"energy_floor", c.energy.floor},
        {"energy_mad_scale", c.energy.mad_scale},
        {"eps_accel", c.eps_accel},
        {"c_min", c.c_min},
        {"c_max", c.c_max},
        {"constancy_window", c.constancy_window},
        {"lookback", c.lookback},
        {"efm_min_len", c.efm_min_len},
    };
}

// ---------------------------------------------------------------------------
// Shared plumbing

/// Runs `body`, mapping library errors onto exit codes.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const InvalidScenario& e) {
        err << "invalid scenario: " << e.what() << '\n';
        return kExitSchema;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const SeriesTooShort& e) {
        err << "degenerate data: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const DegenerateFrame& e) {
        err << "degenerate data: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const UnlabeledFrames& e) {
        err << "degenerate data: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

/// Unknown frames are rejected only where the pipeline promises totality.
inline UnknownPolicy policy_for(const ConceptConfig& c) {
    return uses_c4(c.variant) && c.prior != Prior::unknown ? UnknownPolicy::reject : UnknownPolicy::ignore;
}

inline bool is_skeleton_path(const fs::path& p) { return p.extension() == ".json"; }

inline WeightTable weights_for(const SkeletonSequence& seq, const RunConfig& cfg) {
    if (!cfg.weights_path.empty()) return io::load_weights_json(cfg.weights_path);
    if (auto preset = preset_weights_for(seq.joint_names)) return *preset;
    throw SchemaError("no built-in weight table covers these joints; pass --weights");
}

/// COM trajectory of a skeleton after the configured occlusion.
inline Trajectory skeleton_to_trajectory(const SkeletonSequence& seq, const WeightTable& w, const RunConfig& cfg,
                                         std::uint64_t seed, std::uint64_t sequence_index) {
    return center_of_mass(occlude(seq, cfg.occlusion, seed, sequence_index), w);
}

inline Trajectory load_agent(const fs::path& path, const RunConfig& cfg, std::uint64_t sequence_index = 0) {
    if (!is_skeleton_path(path)) {
        if (cfg.occlusion != OcclusionMode::none) throw InvalidInput("--occlude needs a skeleton input");
        return io::load_trajectory_csv(path);
    }
    const SkeletonSequence seq = io::load_skeleton_json(path);
    return skeleton_to_trajectory(seq, weights_for(seq, cfg), cfg, cfg.seed, sequence_index);
}

// ---------------------------------------------------------------------------
// infer

inline json infer_result(const Trajectory& traj, const RunConfig& cfg, Analysis* out = nullptr) {
    Analysis a = analyze(traj, cfg.concepts, cfg.g);
    const VideoDecision d = decide(a.output, cfg.agg, cfg.agg_threshold, policy_for(cfg.concepts));
    std::optional<IntentSignal> smoothed;
    if (cfg.smooth_window > 0) smoothed = smooth_labels(a.output, cfg.smooth_window);
    json j = io::result_to_json(a, d, cfg.concepts, cfg.g, smoothed);
    if (out) *out = std::move(a);
    return j;
}

/// Writes the result JSON to `output` ("-" or empty: `out` stream).
inline int cmd_infer(const fs::path& input, const fs::path& output, const RunConfig& cfg, std::ostream& out,
                     std::ostream& err) {
    return guarded(err, [&] {
        cfg.validate();
        const Trajectory traj = load_agent(input, cfg);
        Analysis a;
        const json result = infer_result(traj, cfg, &a);
        const std::string text = io::dump(result);
        if (output.empty() || output == "-") out << text;
        else io::write_file(output, text);
        if (!cfg.svg_path.empty()) io::write_file(cfg.svg_path, svg::render_bar(a.output));
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// synth

struct SynthRequest {
    fs::path out_dir;
    // suite mode when `scenario` is empty
    std::size_t n_per_kind = kDefaultSuitePerKind;
    std::uint64_t seed = kDefaultSuiteSeed;
    double noise_sigma = 0.0;
    std::optional<Scenario> scenario;
    std::string name;  // single-scenario file stem, defaults to the kind
    io::CorpusOptions corpus;
};

/// Parses "key=value" into a scenario parameter.
inline std::pair<std::string, double> parse_param(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidScenario("param must look like key=value: '" + kv + "'");
    const auto v = io::parse_double(std::string_view(kv).substr(eq + 1));
    if (!v || !std::isfinite(*v)) throw InvalidScenario("param '" + kv + "' has a non-numeric value");
    return {kv.substr(0, eq), *v};
}

inline int cmd_synth(const SynthRequest& req, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (req.out_dir.empty()) throw InvalidScenario("an output directory is required");
        if (req.scenario) {
            const std::string name = req.name.empty() ? std::string(to_string(req.scenario->kind)) : req.name;
            generate(*req.scenario);  // validate before touching the disk
            io::write_sequence(req.out_dir, name, *req.scenario, req.corpus);
            out << "wrote " << (req.out_dir / name).string() << ".*\n";
            return kExitOk;
        }
        const auto suite = benchmark_suite(req.n_per_kind, req.seed, req.noise_sigma);
        io::write_corpus(req.out_dir, suite, req.n_per_kind, req.seed, req.corpus);
        out << "wrote " << suite.size() << " sequences to " << req.out_dir.string() << '\n';
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// eval

enum class EvalInput { automatic, trajectory, skeleton };

inline std::optional<EvalInput> parse_eval_input(std::string_view s) {
    if (s == "auto") return EvalInput::automatic;
    if (s == "trajectory") return EvalInput::trajectory;
    if (s == "skeleton") return EvalInput::skeleton;
    return std::nullopt;
}

struct EvalRequest {
    fs::path corpus_dir;
    fs::path output;  // metrics JSON, "-" or empty: stdout
    EvalInput input = EvalInput::automatic;
    bool variant_sweep = false;
    bool occlusion_sweep = false;
    std::size_t repeats = 5;  // occlusion draws per mode
};

/// One loaded corpus sequence. Skeleton sequences keep their weights so that
/// occlusion can be re-drawn per run.
struct EvalSequence {
    std::string name;
    VideoLabel truth = VideoLabel::intentional;
    std::optional<Trajectory> trajectory;
    std::optional<SkeletonSequence> skeleton;
    std::optional<WeightTable> weights;
};

struct LoadedCorpus {
    std::vector<EvalSequence> sequences;
    std::vector<std::string> offenders;  // "name: reason"
    bool skeleton = false;
};

inline LoadedCorpus load_eval_corpus(const EvalRequest& req, const RunConfig& cfg) {
    LoadedCorpus c;
    const std::vector<std::string> names = io::list_corpus(req.corpus_dir);
    if (names.empty()) throw SchemaError("no '*" + std::string(io::kTruthSuffix) + "' files in '" +
                                         req.corpus_dir.string() + "'");
    bool want_skeleton = req.input == EvalInput::skeleton;
    if (req.input == EvalInput::automatic) {
        const bool have_csv = fs::exists(req.corpus_dir / (names.front() + ".csv"));
        want_skeleton = req.occlusion_sweep || cfg.occlusion != OcclusionMode::none || !have_csv;
    }
    c.skeleton = want_skeleton;
    for (const std::string& name : names) {
        EvalSequence s;
        s.name = name;
        try {
            s.truth = io::load_truth_json(req.corpus_dir / (name + std::string(io::kTruthSuffix))).video_label;
            if (want_skeleton) {
                s.skeleton = io::load_skeleton_json(req.corpus_dir / (name + std::string(io::kSkeletonSuffix)));
                s.weights = weights_for(*s.skeleton, cfg);
            } else {
                s.trajectory = io::load_trajectory_csv(req.corpus_dir / (name + ".csv"));
            }
            c.sequences.push_back(std::move(s));
        } catch (const std::exception& e) {
            c.offenders.push_back(name + ": " + e.what());
        }
    }
    return c;
}

struct SequenceOutcome {
    std::string name;
    VideoLabel truth;
    VideoDecision decision;
};

/// Runs one configuration over the corpus. Failures are appended to `offenders`.
inline std::vector<SequenceOutcome> run_corpus(const LoadedCorpus& c, const RunConfig& cfg, OcclusionMode occlusion,
                                               std::uint64_t seed, std::vector<std::string>& offenders) {
    std::vector<SequenceOutcome> out;
    out.reserve(c.sequences.size());
    RunConfig run = cfg;
    run.occlusion = occlusion;
    for (std::size_t i = 0; i < c.sequences.size(); ++i) {
        const EvalSequence& s = c.sequences[i];
        try {
            const Trajectory traj = s.skeleton ? skeleton_to_trajectory(*s.skeleton, *s.weights, run, seed, i)
                                               : *s.trajectory;
            const IntentSignal labels = infer(traj, run.concepts, run.g);
            out.push_back({s.name, s.truth, decide(labels, run.agg, run.agg_threshold, policy_for(run.concepts))});
        } catch (const std::exception& e) {
            offenders.push_back(s.name + ": " + e.what());
        }
    }
    return out;
}

inline Metrics score(const std::vector<SequenceOutcome>& outcomes) {
    std::vector<VideoLabel> predicted, truth;
    for (const auto& o : outcomes) {
        predicted.push_back(o.decision.label);
        truth.push_back(o.truth);
    }
    return score_batch(predicted, truth);
}

inline json metrics_to_json(const Metrics& m) {
    json j{
        {"n", m.n},
        {"correct", m.correct},
        {"accuracy", m.accuracy},
        {"confusion",
         {{"true_intentional", m.true_intentional},
          {"false_intentional", m.false_intentional},
          {"true_non_intentional", m.true_non_intentional},
          {"false_non_intentional", m.false_non_intentional}}},
    };
    return j;
}

inline std::string fixed3(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    return os.str();
}

struct OcclusionRow {
    OcclusionMode mode;
    std::vector<double> accuracies;
    double mean = 0.0;
    double sem = 0.0;
    double changed_mean = 0.0;  // fraction of decisions differing from the unoccluded run
    double changed_max = 0.0;
};

inline OcclusionRow summarize(OcclusionMode mode, const std::vector<double>& acc, const std::vector<double>& changed) {
    OcclusionRow r{mode, acc};
    const double k = static_cast<double>(acc.size());
    for (double a : acc) r.mean += a / k;
    if (acc.size() > 1) {
        double ss = 0.0;
        for (double a : acc) ss += (a - r.mean) * (a - r.mean);
        r.sem = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    }
    for (double c : changed) {
        r.changed_mean += c / static_cast<double>(changed.size());
        r.changed_max = std::max(r.changed_max, c);
    }
    return r;
}

inline int cmd_eval(const EvalRequest& req, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        cfg.validate();
        if (req.repeats == 0) throw InvalidInput("repeats must be at least 1");
        const LoadedCorpus corpus = load_eval_corpus(req, cfg);
        std::vector<std::string> offenders = corpus.offenders;
        if (!offenders.empty()) {
            err << "unreadable sequences:\n";
            for (const auto& o : offenders) err << "  " << o << '\n';
            return kExitDegenerate;
        }
        std::ostringstream table;
        json report;
        report["corpus"] = req.corpus_dir.string();
        report["input"] = corpus.skeleton ? "skeleton" : "trajectory";
        report["config"] = config_to_json(cfg);

        const auto base = run_corpus(corpus, cfg, cfg.occlusion, cfg.seed, offenders);
        const Metrics m = score(base);
        report["metrics"] = metrics_to_json(m);
        json seqs = json::array();
        for (const auto& o : base) {
            seqs.push_back({{"name", o.name},
                            {"truth", std::string(to_string(o.truth))},
                            {"predicted", std::string(to_string(o.decision.label))},
                            {"score", o.decision.score}});
        }
        report["sequences"] = std::move(seqs);
        table << "accuracy " << fixed3(m.accuracy) << " (" << m.correct << "/" << m.n << "), variant "
            << to_string(cfg.concepts.variant) << ", " << (corpus.skeleton ? "skeleton" : "trajectory") << " input\n";

        if (req.variant_sweep) {
            json cols = json::array();
            json rows = json::array();
            std::ostringstream head, accs;
            head << "variant ";
            accs << "accuracy";
            for (Variant v : kAllVariants) {
                RunConfig vc = cfg;
                vc.concepts.variant = v;
                const Metrics vm = score(run_corpus(corpus, vc, cfg.occlusion, cfg.seed, offenders));
                cols.push_back(std::string(variant_heading(v)));
                rows.push_back({{"variant", std::string(to_string(v))},
                                {"heading", std::string(variant_heading(v))},
                                {"accuracy", vm.accuracy},
                                {"correct", vm.correct},
                                {"n", vm.n}});
                head << " | " << std::setw(7) << variant_heading(v);
                accs << " | " << std::setw(7) << fixed3(vm.accuracy);
            }
            report["variant_sweep"] = {{"columns", cols}, {"rows", rows}};
            table << head.str() << '\n' << accs.str() << '\n';
        }

        if (req.occlusion_sweep) {
            if (!corpus.skeleton) throw InvalidInput("the occlusion sweep needs skeleton input");
            const auto reference = run_corpus(corpus, cfg, OcclusionMode::none, cfg.seed, offenders);
            json rows = json::array();
            table << std::left << std::setw(20) << "occlusion" << " | accuracy |   sem | changed\n";
            for (OcclusionMode mode : kAllOcclusionModes) {
                const std::size_t draws = mode == OcclusionMode::none ? 1 : req.repeats;
                std::vector<double> acc, changed;
                for (std::size_t r = 0; r < draws; ++r) {
                    const std::uint64_t seed = derive_seed({cfg.seed, r});
                    const auto run = run_corpus(corpus, cfg, mode, seed, offenders);
                    acc.push_back(score(run).accuracy);
                    std::size_t diff = 0;
                    for (std::size_t i = 0; i < run.size() && i < reference.size(); ++i) {
                        diff += run[i].decision.label != reference[i].decision.label;
                    }
                    changed.push_back(run.empty() ? 0.0 : static_cast<double>(diff) / static_cast<double>(run.size()));
                }
                const OcclusionRow row = summarize(mode, acc, changed);
                rows.push_back({{"mode", std::string(to_string(mode))},
                                {"heading", std::string(occlusion_heading(mode))},
                                {"repeats", draws},
                                {"accuracy_mean", row.mean},
                                {"accuracy_sem", row.sem},
                                {"accuracies", row.accuracies},
                                {"decisions_changed_mean", row.changed_mean},
                                {"decisions_changed_max", row.changed_max}});
                table << std::left << std::setw(20) << occlusion_heading(mode) << std::right << " | " << std::setw(8)
                    << fixed3(row.mean) << " | " << std::setw(5) << fixed3(row.sem) << " | " << fixed3(row.changed_mean)
                    << '\n';
            }
            report["occlusion_sweep"] = {{"rows", rows}};
        }

        if (!offenders.empty()) {
            err << "sequences that failed inference:\n";
            for (const auto& o : offenders) err << "  " << o << '\n';
            return kExitDegenerate;
        }
        const std::string text = io::dump(report);
        if (req.output.empty() || req.output == "-") {
            out << text;
        } else {
            io::write_file(req.output, text);
            out << table.str();
        }
        return kExitOk;
    });
}

}  // namespace intentkin::cli
