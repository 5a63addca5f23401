#pragma once

#include <array>
#include <fstream>
#include <string>

#include "o2osim/core/error.hpp"
#include "o2osim/core/hash.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

// Fixed PAD coordinates for the seven discrete emotions. Indexed by
// EmotionLabel; classification picks the nearest anchor in Euclidean
// distance, ties resolved by label order.
inline constexpr std::array<PadState, kEmotionCount> kPadAnchors = {{
    {-0.51, 0.59, 0.25},  // Anger
    {-0.60, 0.35, 0.11},  // Disgust
    {-0.62, 0.82, -0.43}, // Fear
    {0.81, 0.51, 0.46},   // Happiness
    {0.00, 0.00, 0.00},   // Neutral
    {-0.63, -0.27, -0.33}, // Sadness
    {0.40, 0.67, -0.13},  // Surprise
}};

inline constexpr PadState anchor(EmotionLabel e) {
    return kPadAnchors[static_cast<std::size_t>(e)];
}

inline double pad_distance_sq(const PadState& a, const PadState& b) {
    const double dp = a.pleasure - b.pleasure;
    const double da = a.arousal - b.arousal;
    const double dd = a.dominance - b.dominance;
    return dp * dp + da * da + dd * dd;
}

inline EmotionLabel classify_emotion(const PadState& state) {
    EmotionLabel best = EmotionLabel::Anger;
    double best_d = pad_distance_sq(state, kPadAnchors[0]);
    for (int i = 1; i < kEmotionCount; ++i) {
        const double d = pad_distance_sq(state, kPadAnchors[static_cast<std::size_t>(i)]);
        if (d < best_d) { // strict: ties keep the earlier label
            best_d = d;
            best = static_cast<EmotionLabel>(i);
        }
    }
    return best;
}

// The same table as CSV, for analysis tooling. A copy ships in the repo as
// data/pad_anchors.csv; a test keeps the two in sync.
inline std::string anchor_table_csv() {
    std::string out = "emotion,pleasure,arousal,dominance\n";
    for (int i = 0; i < kEmotionCount; ++i) {
        const auto& a = kPadAnchors[static_cast<std::size_t>(i)];
        out += emotion_name(static_cast<EmotionLabel>(i));
        out += ',';
        out += fmt_double(a.pleasure);
        out += ',';
        out += fmt_double(a.arousal);
        out += ',';
        out += fmt_double(a.dominance);
        out += '\n';
    }
    return out;
}

inline void write_anchor_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << anchor_table_csv();
}

} // namespace o2o
