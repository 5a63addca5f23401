#pragma once

#include <cstdint>
#include <string>

#include "o2osim/core/error.hpp"
#include "o2osim/core/hash.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

enum class Answer : std::uint8_t { Accept, Reject };

inline std::string answer_name(Answer a) {
    return a == Answer::Accept ? "Accept" : "Reject";
}

struct OrderSummary {
    std::uint64_t order_id = 0;
    double value = 0.0;
    int pickup_distance = 0;   // rider -> maker, cells
    int delivery_distance = 0; // maker -> booker, cells
    int deadline_steps = 0;    // steps until the pending offer expires
};

struct AgentSnapshot {
    double stamina = 100.0;
    double income = 0.0;
    int held = 0;
    int max_held = 3;
    EmotionLabel emotion = EmotionLabel::Neutral;
    PadState pad;
    DiligenceLevel diligence = DiligenceLevel::Average;
    int rank = 1;
    int n_riders = 1;
};

struct DecisionQuestion {
    std::string question_text;
    OrderSummary order;
    AgentSnapshot agent;
};

struct DecisionResponse {
    Answer answer = Answer::Reject;
    std::string reason;
    std::string backend_id;
    double latency_ms = 0.0;
};

// The question text is what gets embedded for cluster lookup and digested
// for memory/trace keys, so it is built from decision-relevant order fields
// only and contains no emotion tokens (it also appears verbatim in
// Traditional prompts).
inline DecisionQuestion make_decision_question(const OrderSummary& order,
                                               const AgentSnapshot& agent) {
    if (agent.held > agent.max_held) {
        throw InvariantViolation("snapshot holds " + std::to_string(agent.held) +
                                 " orders with max " +
                                 std::to_string(agent.max_held));
    }
    DecisionQuestion q;
    q.order = order;
    q.agent = agent;
    q.question_text = "Order " + std::to_string(order.order_id) + " pays " +
                      fmt_double(order.value) + ". Pickup is " +
                      std::to_string(order.pickup_distance) +
                      " cells away and the delivery leg is " +
                      std::to_string(order.delivery_distance) +
                      " cells. The offer expires in " +
                      std::to_string(order.deadline_steps) +
                      " steps. Do you accept this order?";
    return q;
}

inline std::string question_digest(const DecisionQuestion& q) {
    return hex64(fnv1a64(q.question_text));
}

} // namespace o2o
