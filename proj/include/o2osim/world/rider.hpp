#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "o2osim/core/config.hpp"
#include "o2osim/core/geometry.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

enum class RiderPhase : std::uint8_t {
    ToWork = 0,
    Waiting,
    Wandering,
    PickingUp,
    Delivering,
    ReturningHome,
    Resting,
};

inline constexpr std::array<std::string_view, 7> kRiderPhaseNames = {
    "ToWork", "Waiting", "Wandering", "PickingUp",
    "Delivering", "ReturningHome", "Resting",
};

inline std::string rider_phase_name(RiderPhase p) {
    return std::string(kRiderPhaseNames[static_cast<std::size_t>(p)]);
}

struct RiderAgent {
    std::uint64_t id = 0;
    GridPos position{};
    GridPos birth_point{};
    GridPos workplace{};
    double speed = 0.0;
    double stamina = 100.0; // [0, 100]
    double income = 0.0;    // cumulative over the run
    DiligenceLevel diligence = DiligenceLevel::Average;
    std::vector<std::uint64_t> held; // accepted orders, delivery in FIFO order
    RiderPhase phase = RiderPhase::Resting;
    PadState pad{};
    EmotionLabel emotion = EmotionLabel::Neutral;

    std::optional<GridPos> wander_target;
    double move_credit = 0.0; // fractional cell budget carried between ticks

    // Per-tick stimulus accumulators, consumed by the PAD update.
    double tick_income_delta = 0.0;
    double tick_stamina_delta = 0.0;
    int rank = 1; // refreshed with the leaderboard every tick

    bool carrying() const { return !held.empty(); }
};

// Stamina-to-speed coupling: linear between floor*initial (stamina 0) and
// initial (stamina 100).
inline void update_speed(RiderAgent& rider, const SimConfig& cfg) {
    rider.speed = cfg.initial_speed *
                  (cfg.speed_floor +
                   (1.0 - cfg.speed_floor) * rider.stamina / 100.0);
}

// One tick of movement toward a single target: spends the speed-scaled
// cell budget along the L-shaped route and pays stamina for the cells
// actually moved. Returns cells moved.
inline int move_rider(RiderAgent& rider, const GridPos& target,
                      const SimConfig& cfg) {
    update_speed(rider, cfg);
    const double ratio = rider.speed / cfg.initial_speed;
    double budget = rider.move_credit + cfg.move_units_per_step * ratio;
    const int cells_avail = static_cast<int>(budget);
    const int moved = advance_toward(rider.position, target, cells_avail);
    // Bank the fraction only while still en route; idle budget does not
    // accumulate across ticks.
    rider.move_credit =
        (rider.position == target) ? 0.0 : budget - cells_avail;
    if (moved > 0) {
        const double before = rider.stamina;
        const double cost = cfg.stamina_per_cell * moved *
                            (1.0 + cfg.stamina_speed_factor * ratio);
        rider.stamina = before - cost < 0.0 ? 0.0 : before - cost;
        rider.tick_stamina_delta += rider.stamina - before;
    }
    return moved;
}

} // namespace o2o
