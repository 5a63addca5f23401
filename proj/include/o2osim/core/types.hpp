#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace o2o {

// Continuous emotional state. Each axis stays inside [-1, 1]; updates that
// would leave the cube are clamped.
struct PadState {
    double pleasure = 0.0;
    double arousal = 0.0;
    double dominance = 0.0;

    friend bool operator==(const PadState&, const PadState&) = default;
};

// Fixed label order; also the tie-break order for nearest-anchor
// classification.
enum class EmotionLabel : std::uint8_t {
    Anger = 0,
    Disgust,
    Fear,
    Happiness,
    Neutral,
    Sadness,
    Surprise,
};

inline constexpr int kEmotionCount = 7;

inline constexpr std::array<std::string_view, kEmotionCount> kEmotionNames = {
    "Anger", "Disgust", "Fear", "Happiness", "Neutral", "Sadness", "Surprise",
};

inline std::string emotion_name(EmotionLabel e) {
    return std::string(kEmotionNames[static_cast<std::size_t>(e)]);
}

inline std::optional<EmotionLabel> parse_emotion(std::string_view s) {
    for (int i = 0; i < kEmotionCount; ++i) {
        if (kEmotionNames[static_cast<std::size_t>(i)] == s) {
            return static_cast<EmotionLabel>(i);
        }
    }
    return std::nullopt;
}

enum class DiligenceLevel : std::uint8_t { Lazy = 0, Average, VeryDiligent };

inline constexpr std::array<std::string_view, 3> kDiligenceNames = {
    "lazy", "average", "very-diligent",
};

inline std::string diligence_name(DiligenceLevel d) {
    return std::string(kDiligenceNames[static_cast<std::size_t>(d)]);
}

inline std::optional<DiligenceLevel> parse_diligence(std::string_view s) {
    for (std::size_t i = 0; i < kDiligenceNames.size(); ++i) {
        if (kDiligenceNames[i] == s) return static_cast<DiligenceLevel>(i);
    }
    return std::nullopt;
}

// The three ablation frameworks. Traditional riders carry no emotional
// modeling at all; EmotionPerceived adds the evolving PAD state to
// decisions; EmotionAligned adds role examples and self-explanation memory
// on top.
enum class FrameworkVariant : std::uint8_t {
    Traditional = 0,
    EmotionPerceived,
    EmotionAligned,
};

inline constexpr std::array<std::string_view, 3> kVariantNames = {
    "traditional", "emotion-perceived", "emotion-aligned",
};

inline std::string variant_name(FrameworkVariant v) {
    return std::string(kVariantNames[static_cast<std::size_t>(v)]);
}

inline std::optional<FrameworkVariant> parse_variant(std::string_view s) {
    for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
        if (kVariantNames[i] == s) return static_cast<FrameworkVariant>(i);
    }
    return std::nullopt;
}

// Integer cell position on the map grid.
struct GridPos {
    int x = 0;
    int y = 0;

    friend bool operator==(const GridPos&, const GridPos&) = default;
};

// Clamp into the PAD range [-1, 1]. Non-finite input is a caller bug.
inline double clamp_unit(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("clamp_unit: non-finite input");
    }
    return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v);
}

inline PadState clamp_pad(const PadState& s) {
    return PadState{clamp_unit(s.pleasure), clamp_unit(s.arousal),
                    clamp_unit(s.dominance)};
}

} // namespace o2o
