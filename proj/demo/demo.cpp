// Labels a double jump and a passive fall and prints both bars as text.

#include <iostream>

#include "intentkin/intentkin.hpp"

namespace {

char glyph(intentkin::Intent v) {
    switch (v) {
        case intentkin::Intent::intentional: return '+';
        case intentkin::Intent::non_intentional: return '-';
        case intentkin::Intent::unknown: break;
    }
    return '.';
}

void show(const char* title, const intentkin::Scenario& s) {
    using namespace intentkin;
    const GeneratedTrajectory gen = generate(s);
    const ConceptConfig cfg;
    const IntentSignal labels = infer(gen.trajectory, cfg, s.g);
    const VideoDecision d = decide_threshold(labels);

    std::cout << title << " (" << gen.trajectory.size() << " frames)\n  ";
    for (Intent v : labels.labels) std::cout << glyph(v);
    std::cout << "\n  video: " << to_string(d.label) << ", " << d.score << " frames of -1\n";
}

}  // namespace

int main() {
    intentkin::Scenario jump;
    jump.kind = intentkin::ScenarioKind::jump_sequence;
    jump.params["jumps"] = 2;
    show("double jump", jump);

    intentkin::Scenario fall;
    fall.kind = intentkin::ScenarioKind::fall_and_rest;
    show("fall and rest", fall);
}
