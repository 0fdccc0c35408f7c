#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "intentkin/io.hpp"
#include "intentkin/random.hpp"
#include "intentkin/svg.hpp"

using namespace intentkin;
namespace fs = std::filesystem;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// Finite doubles across many magnitudes, including signed zero and subnormals.
std::vector<double> awkward_values(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v{0.0, -0.0, 1e-310, -4.9e-324, std::numeric_limits<double>::max(),
                          std::numeric_limits<double>::lowest(), 0.1, 1.0 / 3.0};
    while (v.size() < n) {
        const double mant = rng.uniform(-1.0, 1.0);
        const int exp = static_cast<int>(rng.below(600)) - 300;
        v.push_back(std::ldexp(mant, exp));
    }
    return v;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("intentkin_io_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

Trajectory read_csv(const std::string& text) {
    std::istringstream in(text);
    return io::read_trajectory_csv(in);
}

}  // namespace

TEST(TrajectoryCsv, RoundTripIsBitExact) {
    const auto values = awkward_values(1000, 1);
    std::vector<Vec3> p;
    for (std::size_t i = 0; i + 2 < values.size(); i += 3) p.push_back({values[i], values[i + 1], values[i + 2]});
    p.push_back({values[999], 0.5, -0.5});
    const Trajectory t(p, 1.0 / 60.0, 12.25);
    std::ostringstream out;
    io::write_trajectory_csv(out, t);
    const Trajectory back = read_csv(out.str());
    ASSERT_EQ(back.size(), t.size());
    EXPECT_TRUE(same_bits(back.dt(), t.dt()));
    EXPECT_TRUE(same_bits(back.frame0_time(), t.frame0_time()));
    for (std::size_t i = 0; i < t.size(); ++i) {
        EXPECT_TRUE(same_bits(back[i].x, t[i].x)) << i;
        EXPECT_TRUE(same_bits(back[i].y, t[i].y)) << i;
        EXPECT_TRUE(same_bits(back[i].z, t[i].z)) << i;
    }
}

TEST(TrajectoryCsv, AcceptsCommentsCrlfAndInfersDt) {
    const auto t = read_csv("\xEF\xBB\xBF# a comment\r\nt, x, y, z\r\n\r\n0,0,1,0\r\n0.5,1,2,3\r\n# mid\r\n1.0,+2,3e0,4\r\n");
    ASSERT_EQ(t.size(), 3u);
    EXPECT_DOUBLE_EQ(t.dt(), 0.5);
    EXPECT_EQ(t[2].x, 2.0);
    EXPECT_EQ(t[2].y, 3.0);
}

TEST(TrajectoryCsv, SchemaErrors) {
    EXPECT_THROW(read_csv(""), SchemaError);
    EXPECT_THROW(read_csv("# only a comment\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y\n0,1,2\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n0,1,2\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n0,1,2,3,4\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n0,1,abc,3\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n0,1,nan,3\n1,1,1,1\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n0,1,inf,3\n1,1,1,1\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n0,0,0,0\n0,0,0,0\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n1,0,0,0\n0,0,0,0\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n0,0,0,0\n1,0,0,0\n3,0,0,0\n"), SchemaError);
    EXPECT_THROW(read_csv("t,x,y,z\n0,0,0,0\n"), SchemaError);
    EXPECT_THROW(read_csv("# dt=-1\nt,x,y,z\n0,0,0,0\n"), SchemaError);
    EXPECT_NO_THROW(read_csv("# dt=0.1\nt,x,y,z\n0,0,0,0\n"));
}

TEST(TrajectoryCsv, MissingFileIsSchemaError) {
    EXPECT_THROW(io::load_trajectory_csv("/nonexistent/nowhere.csv"), SchemaError);
}

TEST(SkeletonJson, RoundTripIsBitExact) {
    const auto values = awkward_values(1002, 2);
    SkeletonSequence s{{"a", "b"}, {}, 1.0 / 25.0, {}};
    for (std::size_t i = 0; i + 5 < values.size(); i += 6) {
        s.frames.push_back({{values[i], values[i + 1], values[i + 2]}, {values[i + 3], values[i + 4], values[i + 5]}});
    }
    s.ensure_visibility();
    s.visibility[3][1] = 0;
    const auto text = io::skeleton_to_json(s).dump();
    const auto back = io::skeleton_from_json(io::parse_json(text, "test"));
    EXPECT_EQ(back.joint_names, s.joint_names);
    EXPECT_EQ(back.visibility, s.visibility);
    EXPECT_DOUBLE_EQ(back.dt, s.dt);
    ASSERT_EQ(back.frames.size(), s.frames.size());
    for (std::size_t f = 0; f < s.frames.size(); ++f) {
        for (std::size_t j = 0; j < 2; ++j) {
            EXPECT_TRUE(same_bits(back.frames[f][j].x, s.frames[f][j].x));
            EXPECT_TRUE(same_bits(back.frames[f][j].y, s.frames[f][j].y));
            EXPECT_TRUE(same_bits(back.frames[f][j].z, s.frames[f][j].z));
        }
    }
}

TEST(SkeletonJson, SchemaErrors) {
    auto parse = [](const char* text) { return io::skeleton_from_json(io::parse_json(text, "t")); };
    EXPECT_THROW(io::parse_json("{", "t"), SchemaError);
    EXPECT_THROW(parse("[]"), SchemaError);
    EXPECT_THROW(parse(R"({"joints": ["a"], "frames": []})"), SchemaError);
    EXPECT_THROW(parse(R"({"fps": 0, "joints": ["a"], "frames": []})"), SchemaError);
    EXPECT_THROW(parse(R"({"fps": 30, "joints": ["a"], "frames": [[[0, 0]]]})"), SchemaError);
    EXPECT_THROW(parse(R"({"fps": 30, "joints": ["a", "b"], "frames": [[[0, 0, 0]]]})"), SchemaError);
    EXPECT_THROW(parse(R"({"fps": 30, "joints": ["a"], "frames": [[[0, "x", 0]]]})"), SchemaError);
    EXPECT_THROW(parse(R"({"fps": 30, "joints": ["a"], "frames": [[[0, 0, 0]]], "visibility": [[1]]})"), SchemaError);
    EXPECT_NO_THROW(parse(R"({"fps": 30, "joints": ["a"], "frames": [[[0, 0, 0]]], "visibility": [[true]]})"));
}

TEST(TruthJson, RoundTripAndErrors) {
    const io::Truth t{VideoLabel::non_intentional, std::vector<int>{1, 0, -1}};
    const auto back = io::truth_from_json(io::parse_json(io::truth_to_json(t).dump(), "t"));
    EXPECT_EQ(back.video_label, t.video_label);
    EXPECT_EQ(back.frame_labels, t.frame_labels);
    EXPECT_FALSE(io::truth_from_json(io::parse_json(R"({"video_label": "intentional"})", "t")).frame_labels);
    EXPECT_THROW(io::truth_from_json(io::parse_json(R"({"video_label": "yes"})", "t")), SchemaError);
    EXPECT_THROW(io::truth_from_json(io::parse_json(R"({"video_label": "intentional", "frame_labels": [2]})", "t")),
                 SchemaError);
    EXPECT_THROW(io::truth_from_json(io::parse_json(R"({})", "t")), SchemaError);
}

TEST(WeightsJson, RoundTripAndErrors) {
    const auto w = mocap21_template().weights;
    const auto back = io::weights_from_json(io::parse_json(io::weights_to_json(w).dump(), "w"));
    EXPECT_EQ(back.part_of, w.part_of);
    EXPECT_EQ(back.part_weight, w.part_weight);
    EXPECT_THROW(io::weights_from_json(io::parse_json(R"({"parts": {"tail": 1}, "joints": {}})", "w")), SchemaError);
    EXPECT_THROW(io::weights_from_json(io::parse_json(R"({"parts": {"torso": 0.5}, "joints": {}})", "w")), SchemaError);
    EXPECT_THROW(io::weights_from_json(io::parse_json(R"({"parts": {"torso": 1}, "joints": {"a": "legs"}})", "w")),
                 SchemaError);
}

TEST(ResultJson, HasTheDocumentedFields) {
    Scenario s;
    s.kind = ScenarioKind::jump_sequence;
    s.params["jumps"] = 2;
    const auto a = analyze(generate(s).trajectory, ConceptConfig{});
    const auto d = decide_threshold(a.output);
    const auto j = io::result_to_json(a, d, ConceptConfig{}, 9.81);
    EXPECT_EQ(j["frame_labels"].size(), a.output.size());
    EXPECT_TRUE(j["intervals"]["efm"].is_array());
    EXPECT_EQ(j["intervals"]["efm"].size(), 2u);
    EXPECT_TRUE(j["intervals"]["unknown"].is_array());
    EXPECT_EQ(j["video"]["label"], "intentional");
    EXPECT_EQ(j["diagnostics"]["E"].size(), a.energy.total.size());
    EXPECT_EQ(j["diagnostics"]["dE"].size(), a.energy.rate.size());
    EXPECT_EQ(j["diagnostics"]["a_y"].size(), a.vertical_acceleration.size());
}

TEST(Corpus, WriteIsDeterministicAndListed) {
    const auto a = scratch_dir("corpus_a");
    const auto b = scratch_dir("corpus_b");
    const auto suite = benchmark_suite(2, 7);
    io::write_corpus(a, suite, 2, 7, {true, "body25"});
    io::write_corpus(b, suite, 2, 7, {true, "body25"});
    const auto names = io::list_corpus(a);
    ASSERT_EQ(names.size(), 14u);
    EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        const auto other = b / entry.path().filename();
        EXPECT_EQ(io::read_file(entry.path()), io::read_file(other)) << entry.path();
        ++files;
    }
    EXPECT_EQ(files, 14u * 3 + 1);
    const auto truth = io::load_truth_json(a / "walk_001.truth.json");
    EXPECT_EQ(truth.video_label, suite[9].scenario.video_label());
    const auto skel = io::load_skeleton_json(a / "walk_001.skeleton.json");
    EXPECT_EQ(skel.joint_count(), 25u);
    EXPECT_EQ(skel.frame_count(), io::load_trajectory_csv(a / "walk_001.csv").size());
    EXPECT_THROW(io::list_corpus(a / "missing"), SchemaError);
}

TEST(Svg, BarColorsAndWidth) {
    const auto s = IntentSignal::from_ints(std::vector<int>{1, 1, -1, 0, 0, 0});
    const auto text = svg::render_bar(s, {1, 10});
    EXPECT_NE(text.find(R"(width="6")"), std::string::npos);
    EXPECT_NE(text.find("#1f4fff"), std::string::npos);
    EXPECT_NE(text.find("#ff3030"), std::string::npos);
    EXPECT_NE(text.find("#bbbbbb"), std::string::npos);
    std::size_t rects = 0;
    for (auto pos = text.find("<rect"); pos != std::string::npos; pos = text.find("<rect", pos + 1)) ++rects;
    EXPECT_EQ(rects, 3u);
    EXPECT_THROW(svg::render_bar(s, {0, 10}), InvalidInput);
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(-0.0), "-0");
    for (double v : awkward_values(200, 3)) EXPECT_TRUE(same_bits(*io::parse_double(io::format_double(v)), v));
}
