#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "o2osim/core/config.hpp"
#include "o2osim/core/types.hpp"
#include "o2osim/emotion/anchors.hpp"

namespace o2o {

// Per-tick inputs to the PAD update: earnings change, stamina change from
// travel (signed; consumption is negative) and the rider's leaderboard
// position.
struct EmotionStimulus {
    double delta_income = 0.0;
    double delta_stamina = 0.0;
    int rank = 1; // 1-based, 1 = highest income
    int n_riders = 1;
};

inline double pleasure_delta(double delta_income, double k_p) {
    return k_p * delta_income;
}

inline double arousal_delta(double delta_stamina, double k_a) {
    return k_a * delta_stamina;
}

inline constexpr std::array<double, 7> kDominanceCriteria = {
    0.5, 0.3, 0.1, 0.0, -0.1, -0.3, -0.4};

// Maps a leaderboard rank to a dominance value via
//   index = round((rank * 7) / n_riders) - 1
// with round-half-away-from-zero, then clamps the index into [0, 6]. The
// clamp keeps top ranks on the positive end when n_riders > 7 (the raw
// formula would give index -1 for them).
inline double dominance_from_rank(int rank, int n_riders) {
    if (n_riders < 1 || rank < 1 || rank > n_riders) {
        throw std::out_of_range("dominance_from_rank: rank " +
                                std::to_string(rank) + " of " +
                                std::to_string(n_riders));
    }
    // Integer round-half-away-from-zero of (7*rank)/n_riders: all terms
    // positive, so round(a/b) = (2a + b) / (2b).
    const long long a = 7LL * rank;
    const long long b = n_riders;
    long long index = (2 * a + b) / (2 * b) - 1;
    if (index < 0) index = 0;
    if (index > 6) index = 6;
    return kDominanceCriteria[static_cast<std::size_t>(index)];
}

// Pleasure and arousal accumulate (with geometric decay toward neutral);
// dominance is an absolute assignment from rank each evaluation.
inline PadState apply_stimulus(const PadState& state,
                               const EmotionStimulus& stim,
                               const SimConfig& cfg) {
    const double keep = 1.0 - cfg.pad_decay;
    PadState next;
    next.pleasure = clamp_unit(keep * state.pleasure +
                               pleasure_delta(stim.delta_income, cfg.k_pleasure));
    next.arousal = clamp_unit(keep * state.arousal +
                              arousal_delta(stim.delta_stamina, cfg.k_arousal));
    next.dominance = dominance_from_rank(stim.rank, stim.n_riders);
    return next;
}

} // namespace o2o
