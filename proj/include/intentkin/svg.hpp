#pragma once

// Intentionality bar: one horizontal strip, one rect per run of equal labels.

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>

#include "intentkin/concepts.hpp"
#include "intentkin/errors.hpp"

namespace intentkin::svg {

inline constexpr std::string_view kIntentionalColor = "#1f4fff";
inline constexpr std::string_view kNonIntentionalColor = "#ff3030";
inline constexpr std::string_view kUnknownColor = "#bbbbbb";

constexpr std::string_view color_of(Intent v) {
    switch (v) {
        case Intent::intentional: return kIntentionalColor;
        case Intent::non_intentional: return kNonIntentionalColor;
        case Intent::unknown: break;
    }
    return kUnknownColor;
}

struct BarStyle {
    std::size_t px_per_frame = 2;
    std::size_t height = 24;
};

inline std::string render_bar(const IntentSignal& signal, BarStyle style = {}) {
    if (style.px_per_frame == 0 || style.height == 0) throw InvalidInput("bar dimensions must be positive");
    const std::size_t n = signal.size();
    const std::size_t width = n == 0 ? style.px_per_frame : n * style.px_per_frame;
    std::ostringstream os;
    os << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << width << R"(" height=")" << style.height
       << R"(" viewBox="0 0 )" << width << ' ' << style.height << R"(" shape-rendering="crispEdges">)" << '\n';
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && signal[j] == signal[i]) ++j;
        os << R"(  <rect x=")" << i * style.px_per_frame << R"(" y="0" width=")" << (j - i) * style.px_per_frame
           << R"(" height=")" << style.height << R"(" fill=")" << color_of(signal[i]) << R"(" data-label=")"
           << to_int(signal[i]) << R"(" data-frames=")" << i << '-' << j - 1 << R"("/>)" << '\n';
        i = j;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace intentkin::svg
