#pragma once

#include <string>

#include "o2osim/cognition/question.hpp"
#include "o2osim/core/hash.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

inline double policy_emotion_bias(EmotionLabel e) {
    switch (e) {
        case EmotionLabel::Happiness:
        case EmotionLabel::Surprise: return 5.0;
        case EmotionLabel::Neutral: return 0.0;
        case EmotionLabel::Sadness:
        case EmotionLabel::Fear: return -3.0;
        case EmotionLabel::Anger:
        case EmotionLabel::Disgust: return -6.0;
    }
    return 0.0;
}

inline double policy_diligence_threshold(DiligenceLevel d) {
    switch (d) {
        case DiligenceLevel::Lazy: return 8.0;
        case DiligenceLevel::Average: return 4.0;
        case DiligenceLevel::VeryDiligent: return 0.0;
    }
    return 4.0;
}

// Deterministic stand-in for an LLM backend, so full runs and the replay
// suite work offline. Hard guards first (capacity, exhaustion), then
//   score = value - 0.1 * (pickup + delivery) + emotion bias
// accepted iff the score exceeds the rider's diligence threshold. The
// constants are arbitrary but frozen.
inline DecisionResponse rule_based_policy(const DecisionQuestion& q) {
    DecisionResponse resp;
    resp.backend_id = "rule";

    if (q.agent.held >= q.agent.max_held) {
        resp.answer = Answer::Reject;
        resp.reason = "already holding " + std::to_string(q.agent.held) + " of " +
                      std::to_string(q.agent.max_held) + " orders";
        return resp;
    }
    if (q.agent.stamina < 20.0) {
        resp.answer = Answer::Reject;
        resp.reason = "stamina " + fmt_double(q.agent.stamina) +
                      " is below the working minimum of 20";
        return resp;
    }

    const double travel =
        static_cast<double>(q.order.pickup_distance + q.order.delivery_distance);
    const double bias = policy_emotion_bias(q.agent.emotion);
    const double score = q.order.value - 0.1 * travel + bias;
    const double threshold = policy_diligence_threshold(q.agent.diligence);

    resp.answer = score > threshold ? Answer::Accept : Answer::Reject;
    resp.reason = "score " + fmt_double(score) + " (value " +
                  fmt_double(q.order.value) + " - 0.1*travel " +
                  fmt_double(travel) + " + bias " + fmt_double(bias) + ") vs " +
                  diligence_name(q.agent.diligence) + " threshold " +
                  fmt_double(threshold);
    return resp;
}

} // namespace o2o
