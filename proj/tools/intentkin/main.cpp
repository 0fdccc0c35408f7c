// intentkin: infer / synth / eval front end.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "intentkin/cli.hpp"

namespace ik = intentkin;
namespace cli = intentkin::cli;

namespace {

// Flags shared by infer and eval. Unset flags leave the config file value.
struct RunFlags {
    std::string config;
    std::optional<std::string> variant, prior, agg, weights, occlude, svg;
    std::optional<double> g;
    std::optional<std::size_t> median_window, smooth;
    std::optional<std::int64_t> agg_threshold;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App& app, bool with_svg) {
        app.add_option("--config", config, "JSON run configuration")->check(CLI::ExistingFile);
        app.add_option("--variant", variant, "c1, c12, c123, c124 or full")
            ->check(CLI::IsMember({"c1", "c12", "c123", "c124", "full"}));
        app.add_option("--prior", prior, "label for a leading unknown run")
            ->check(CLI::IsMember({"intent", "nonintent", "unknown"}));
        app.add_option("--g", g, "gravitational acceleration");
        app.add_option("--median-window", median_window, "energy median filter width in frames");
        app.add_option("--agg", agg, "video decision rule")->check(CLI::IsMember({"sum", "threshold"}));
        app.add_option("--agg-threshold", agg_threshold, "threshold rule: -1 frames needed (strictly more)");
        app.add_option("--weights", weights, "weight table JSON for skeleton input");
        app.add_option("--occlude", occlude, "drop one joint")->check(CLI::IsMember({"none", "all", "agent", "frame"}));
        app.add_option("--seed", seed, "occlusion seed");
        if (with_svg) {
            app.add_option("--svg", svg, "write the intentionality bar as SVG");
            app.add_option("--smooth", smooth, "also report median-smoothed labels (window in frames)");
        }
    }

    cli::RunConfig resolve() const {
        cli::RunConfig cfg;
        if (!config.empty()) cfg = cli::load_config(config, cfg);
        if (variant) cfg.concepts.variant = *ik::parse_variant(*variant);
        if (prior) cfg.concepts.prior = *ik::parse_prior(*prior);
        if (g) cfg.g = *g;
        if (median_window) cfg.concepts.median_window = *median_window;
        if (agg) cfg.agg = *cli::parse_aggregation(*agg);
        if (agg_threshold) cfg.agg_threshold = *agg_threshold;
        if (weights) cfg.weights_path = *weights;
        if (occlude) cfg.occlusion = *ik::parse_occlusion(*occlude);
        if (seed) cfg.seed = *seed;
        if (svg) cfg.svg_path = *svg;
        if (smooth) cfg.smooth_window = *smooth;
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intentionality of motion from kinematics"};
    app.require_subcommand(1);

    // infer
    auto* infer = app.add_subcommand("infer", "label every frame of one trajectory or skeleton");
    std::string infer_input, infer_output = "-";
    RunFlags infer_flags;
    infer->add_option("input", infer_input, "trajectory CSV or skeleton JSON")->required();
    infer->add_option("-o,--output", infer_output, "result JSON (default stdout)");
    infer_flags.attach(*infer, true);

    // synth
    auto* synth = app.add_subcommand("synth", "write a synthetic corpus or a single scenario");
    cli::SynthRequest synth_req;
    std::string synth_out, kind, label;
    std::vector<std::string> params;
    double dt = 1.0 / 60.0, g = ik::kStandardGravity;
    synth->add_option("out_dir", synth_out, "output directory")->required();
    synth->add_option("--n-per-kind", synth_req.n_per_kind, "suite: sequences per scenario kind");
    synth->add_option("--seed", synth_req.seed, "suite or scenario seed");
    synth->add_option("--noise", synth_req.noise_sigma, "gaussian position noise (length units)");
    synth->add_option("--kind", kind, "single scenario kind");
    synth->add_option("--label", label, "single scenario video label")
        ->check(CLI::IsMember({"intentional", "non-intentional"}));
    synth->add_option("--param", params, "scenario parameter key=value (repeatable)");
    synth->add_option("--dt", dt, "frame interval in seconds");
    synth->add_option("--g", g, "gravitational acceleration");
    synth->add_option("--name", synth_req.name, "file stem for a single scenario");
    synth->add_flag("--skeletons", synth_req.corpus.skeletons, "also write skeleton JSON");
    synth->add_option("--template", synth_req.corpus.skeleton_template, "skeleton template: mocap21 or body25")
        ->check(CLI::IsMember({"mocap21", "body25"}));

    // eval
    auto* eval = app.add_subcommand("eval", "score a labeled corpus");
    cli::EvalRequest eval_req;
    std::string eval_dir, eval_output = "-", eval_input = "auto";
    RunFlags eval_flags;
    eval->add_option("corpus", eval_dir, "corpus directory")->required();
    eval->add_option("-o,--output", eval_output, "metrics JSON (default stdout)");
    eval->add_option("--input", eval_input, "auto, trajectory or skeleton")
        ->check(CLI::IsMember({"auto", "trajectory", "skeleton"}));
    eval->add_flag("--sweep-variants", eval_req.variant_sweep, "report every ablation variant");
    eval->add_flag("--sweep-occlusion", eval_req.occlusion_sweep, "report every occlusion mode");
    eval->add_option("--repeats", eval_req.repeats, "occlusion draws per mode");
    eval_flags.attach(*eval, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitSchema;
    }

    if (*infer) {
        cli::RunConfig cfg;
        const int rc = cli::guarded(std::cerr, [&] {
            cfg = infer_flags.resolve();
            return 0;
        });
        if (rc != 0) return rc;
        return cli::cmd_infer(infer_input, infer_output, cfg, std::cout, std::cerr);
    }
    if (*synth) {
        synth_req.out_dir = synth_out;
        const int rc = cli::guarded(std::cerr, [&] {
            if (!kind.empty()) {
                const auto k = ik::parse_scenario_kind(kind);
                if (!k) throw ik::InvalidScenario("unknown scenario kind '" + kind + "'");
                ik::Scenario s;
                s.kind = *k;
                if (!label.empty()) s.label = ik::parse_video_label(label);
                for (const auto& kv : params) s.params.insert(cli::parse_param(kv));
                s.dt = dt;
                s.g = g;
                s.seed = synth_req.seed;
                s.noise_sigma = synth_req.noise_sigma;
                synth_req.scenario = s;
            } else if (!label.empty() || !params.empty()) {
                throw ik::InvalidScenario("--label and --param need --kind");
            }
            return 0;
        });
        if (rc != 0) return rc;
        return cli::cmd_synth(synth_req, std::cout, std::cerr);
    }
    cli::RunConfig cfg;
    const int rc = cli::guarded(std::cerr, [&] {
        cfg = eval_flags.resolve();
        return 0;
    });
    if (rc != 0) return rc;
    eval_req.corpus_dir = eval_dir;
    eval_req.output = eval_output;
    eval_req.input = *cli::parse_eval_input(eval_input);
    return cli::cmd_eval(eval_req, cfg, std::cout, std::cerr);
}
