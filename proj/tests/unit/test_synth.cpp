#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "intentkin/energy.hpp"
#include "intentkin/synth.hpp"

using namespace intentkin;

namespace {

Scenario make(ScenarioKind kind, std::optional<VideoLabel> label = std::nullopt) {
    Scenario s;
    s.kind = kind;
    s.label = label;
    return s;
}

// Absolute mechanical energy per unit mass on the half-step grid, floor at y = 0.
std::vector<double> absolute_energy(const Trajectory& t, double g) {
    std::vector<double> e;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const Vec3 v = (1.0 / t.dt()) * (t[i + 1] - t[i]);
        e.push_back(0.5 * v.squared_norm() + g * 0.5 * (t[i].y + t[i + 1].y));
    }
    return e;
}

}  // namespace

TEST(Generate, ProjectileMatchesClosedForm) {
    const Scenario s = make(ScenarioKind::projectile);
    const auto gen = generate(s);
    EXPECT_EQ(gen.video_label, VideoLabel::non_intentional);
    ASSERT_EQ(gen.trajectory.size(), 121u);
    for (std::size_t i = 0; i < gen.trajectory.size(); ++i) {
        const double t = static_cast<double>(i) * s.dt;
        EXPECT_NEAR(gen.trajectory[i].y, 10.0 + 5.0 * t - 4.905 * t * t, 1e-3);
        EXPECT_NEAR(gen.trajectory[i].x, 2.0 * t, 1e-9);
        EXPECT_EQ(gen.truth[i], Intent::non_intentional);
    }
}

TEST(Generate, JumpSequenceIsAllIntentional) {
    const Scenario s = make(ScenarioKind::jump_sequence);
    const auto gen = generate(s);
    EXPECT_EQ(gen.video_label, VideoLabel::intentional);
    EXPECT_EQ(gen.truth.count(Intent::intentional), gen.truth.size());
    const auto segs = build_path(s).segments();
    ASSERT_EQ(segs.size(), 3u);
    EXPECT_NEAR(segs[1].duration / s.dt, 2 * 4.0 / 9.81 * 60.0, 1e-6);  // about 49 frames
    EXPECT_NEAR(segs[1].duration / s.dt, 49.0, 1.0);
    EXPECT_EQ(gen.trajectory.size(), static_cast<std::size_t>(std::floor((120 * s.dt + segs[1].duration) / s.dt + 1e-9)) + 1);
}

TEST(Generate, WalkTripTruth) {
    const auto gen = generate(make(ScenarioKind::walk_trip));
    EXPECT_EQ(gen.video_label, VideoLabel::non_intentional);
    ASSERT_EQ(gen.truth.size(), 211u);
    for (std::size_t i = 0; i < gen.truth.size(); ++i) {
        EXPECT_EQ(gen.truth[i], i < 120 ? Intent::intentional : Intent::non_intentional) << i;
    }
}

TEST(Generate, NaturalLabels) {
    std::set<ScenarioKind> intentional;
    for (ScenarioKind k : kAllScenarioKinds) {
        if (natural_label(k) == VideoLabel::intentional) intentional.insert(k);
        EXPECT_EQ(parse_scenario_kind(to_string(k)), k);
    }
    EXPECT_EQ(intentional, (std::set<ScenarioKind>{ScenarioKind::jump_sequence, ScenarioKind::walk}));
}

TEST(Generate, EveryKindAndLabelBuilds) {
    for (ScenarioKind k : kAllScenarioKinds) {
        for (VideoLabel l : {VideoLabel::intentional, VideoLabel::non_intentional}) {
            const auto gen = generate(make(k, l));
            EXPECT_EQ(gen.truth.size(), gen.trajectory.size());
            EXPECT_EQ(gen.video_label, l);
            EXPECT_GE(gen.trajectory.size(), 100u);
        }
    }
}

TEST(Generate, InvalidScenarios) {
    Scenario s = make(ScenarioKind::bounce);
    s.params["restitution"] = 1.2;
    EXPECT_THROW(generate(s), InvalidScenario);
    s.params["restitution"] = 1.0;
    EXPECT_THROW(generate(s), InvalidScenario);
    s = make(ScenarioKind::incline);
    s.params["theta_deg"] = 95;
    EXPECT_THROW(generate(s), InvalidScenario);
    s = make(ScenarioKind::walk);
    s.dt = 0.0;
    EXPECT_THROW(generate(s), InvalidScenario);
    s = make(ScenarioKind::walk);
    s.noise_sigma = -1;
    EXPECT_THROW(generate(s), InvalidScenario);
    s = make(ScenarioKind::walk);
    s.params["walk_frames"] = -3;
    EXPECT_THROW(generate(s), InvalidScenario);
}

TEST(Generate, BounceKeepsESquaredOfTheEnergy) {
    for (double e : {0.5, 0.7, 0.9}) {
        Scenario s = make(ScenarioKind::bounce);
        s.params["restitution"] = e;
        const auto gen = generate(s);
        const auto energy = absolute_energy(gen.trajectory, s.g);
        const auto segs = build_path(s).segments();
        // Compare the energy in the middle of consecutive flights.
        std::vector<double> flight_energy;
        for (const Segment& seg : segs) {
            if (seg.acceleration.y >= 0.0 || seg.duration < 10 * s.dt) continue;
            const auto mid = static_cast<std::size_t>((seg.start + 0.5 * seg.duration) / s.dt);
            flight_energy.push_back(energy.at(mid));
        }
        ASSERT_GE(flight_energy.size(), 3u);
        for (std::size_t k = 1; k < flight_energy.size(); ++k) {
            EXPECT_NEAR(flight_energy[k] / flight_energy[k - 1], e * e, 0.01 * e * e) << "e=" << e << " k=" << k;
        }
    }
}

TEST(Generate, PhysicsKindsConserveEnergyBetweenContacts) {
    for (ScenarioKind k : {ScenarioKind::projectile, ScenarioKind::bounce, ScenarioKind::incline}) {
        const Scenario s = make(k, VideoLabel::non_intentional);
        const auto gen = generate(s);
        const auto energy = absolute_energy(gen.trajectory, s.g);
        for (const Segment& seg : std::vector<Segment>(build_path(s).segments())) {
            const auto first = static_cast<std::size_t>(std::ceil(seg.start / s.dt)) + 1;
            const auto last = static_cast<std::size_t>(std::floor(seg.end() / s.dt));
            if (last <= first + 1) continue;
            const double scale = std::max(1.0, std::abs(energy[first]));
            for (std::size_t i = first; i + 1 < last && i < energy.size(); ++i) {
                EXPECT_LT(std::abs(energy[i] - energy[first]), 1e-2 * scale) << to_string(k) << " frame " << i;
            }
        }
    }
}

TEST(Generate, NoiseIsSeeded) {
    Scenario s = make(ScenarioKind::walk);
    s.noise_sigma = 0.01;
    s.seed = 5;
    const auto a = generate(s);
    const auto b = generate(s);
    s.seed = 6;
    const auto c = generate(s);
    EXPECT_EQ(a.trajectory[10].x, b.trajectory[10].x);
    EXPECT_NE(a.trajectory[10].x, c.trajectory[10].x);
    EXPECT_EQ(a.truth, c.truth);
}

TEST(GenerateSkeleton, RigidCarryRecoversTheTrajectory) {
    const Scenario s = make(ScenarioKind::jump_sequence);
    const auto com_path = generate(s).trajectory;
    for (const auto& tpl : {mocap21_template(), body25_template()}) {
        const auto skel = generate_skeleton(s, tpl, LimbMotion{0.0, 0.0});
        const auto com = center_of_mass(skel.skeleton, tpl.weights);
        ASSERT_EQ(com.size(), com_path.size());
        for (std::size_t i = 0; i < com.size(); ++i) {
            EXPECT_NEAR(com[i].x, com_path[i].x, 1e-9);
            EXPECT_NEAR(com[i].y, com_path[i].y, 1e-9);
            EXPECT_NEAR(com[i].z, com_path[i].z, 1e-9);
        }
    }
}

TEST(GenerateSkeleton, LimbMotionPreservesTheCom) {
    Scenario s = make(ScenarioKind::walk_trip);
    const auto com_path = generate(s).trajectory;
    const auto tpl = mocap21_template();
    s.seed = 1;
    const auto a = generate_skeleton(s, tpl);
    s.seed = 2;
    const auto b = generate_skeleton(s, tpl);
    const auto ca = center_of_mass(a.skeleton, tpl.weights);
    const auto cb = center_of_mass(b.skeleton, tpl.weights);
    bool joints_differ = false;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        EXPECT_NEAR(ca[i].y, com_path[i].y, 1e-6);
        EXPECT_NEAR(ca[i].x, com_path[i].x, 1e-6);
        EXPECT_NEAR(ca[i].y, cb[i].y, 1e-9);
        joints_differ = joints_differ || a.skeleton.frames[i][8].x != b.skeleton.frames[i][8].x;
    }
    EXPECT_TRUE(joints_differ);
    EXPECT_EQ(a.truth, generate(s).truth);
}

TEST(GenerateSkeleton, RejectsNegativeAmplitude) {
    EXPECT_THROW(generate_skeleton(Scenario{}, mocap21_template(), LimbMotion{-1.0, 1.0}), InvalidScenario);
}

TEST(BenchmarkSuite, BalancedAndNamed) {
    const auto suite = benchmark_suite();
    ASSERT_EQ(suite.size(), 70u);
    std::size_t intentional = 0;
    std::set<std::string> names;
    for (const auto& e : suite) {
        intentional += e.scenario.video_label() == VideoLabel::intentional;
        names.insert(e.name);
    }
    EXPECT_EQ(intentional, 35u);
    EXPECT_EQ(names.size(), 70u);
    EXPECT_EQ(suite.front().name, "projectile_000");
    EXPECT_THROW(benchmark_suite(0), InvalidScenario);
}

TEST(BenchmarkSuite, Deterministic) {
    const auto a = benchmark_suite(3, 11, 0.001);
    const auto b = benchmark_suite(3, 11, 0.001);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].name, b[i].name);
        EXPECT_EQ(a[i].scenario.params, b[i].scenario.params);
        const auto ta = generate(a[i].scenario).trajectory;
        const auto tb = generate(b[i].scenario).trajectory;
        ASSERT_EQ(ta.size(), tb.size());
        for (std::size_t f = 0; f < ta.size(); ++f) EXPECT_EQ(ta[f].y, tb[f].y);
    }
    const auto c = benchmark_suite(3, 12, 0.001);
    EXPECT_NE(a[0].scenario.params, c[0].scenario.params);
}
