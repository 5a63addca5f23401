#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "o2osim/core/error.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

enum class OrderState : std::uint8_t {
    Pending = 0,
    Assigned,
    Accepted,
    PickedUp,
    Delivered,
    Rejected,
    Expired,
};

inline constexpr std::array<std::string_view, 7> kOrderStateNames = {
    "Pending", "Assigned", "Accepted", "PickedUp",
    "Delivered", "Rejected", "Expired",
};

inline std::string order_state_name(OrderState s) {
    return std::string(kOrderStateNames[static_cast<std::size_t>(s)]);
}

struct Order {
    std::uint64_t id = 0;
    GridPos maker{};
    GridPos booker{};
    double value = 0.0;
    int created_step = 0;
    int expiry_step = 0; // pending offers expire at this step
    OrderState state = OrderState::Pending;
    std::optional<std::uint64_t> assigned_rider;
};

inline bool order_terminal(OrderState s) {
    return s == OrderState::Delivered || s == OrderState::Expired;
}

// Legal lifecycle:
//   Pending -> Assigned -> { Accepted -> PickedUp -> Delivered,
//                            Rejected -> Pending }
//   Pending -> Expired
inline bool order_transition_legal(OrderState from, OrderState to) {
    switch (from) {
        case OrderState::Pending:
            return to == OrderState::Assigned || to == OrderState::Expired;
        case OrderState::Assigned:
            return to == OrderState::Accepted || to == OrderState::Rejected;
        case OrderState::Rejected: return to == OrderState::Pending;
        case OrderState::Accepted: return to == OrderState::PickedUp;
        case OrderState::PickedUp: return to == OrderState::Delivered;
        case OrderState::Delivered:
        case OrderState::Expired: return false;
    }
    return false;
}

inline void order_transition(Order& order, OrderState to) {
    if (!order_transition_legal(order.state, to)) {
        throw InvariantViolation("order " + std::to_string(order.id) +
                                 ": illegal transition " +
                                 order_state_name(order.state) + " -> " +
                                 order_state_name(to));
    }
    order.state = to;
}

} // namespace o2o
