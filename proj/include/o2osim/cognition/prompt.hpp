#pragma once

#include <string>
#include <vector>

#include "o2osim/cognition/memory.hpp"
#include "o2osim/cognition/question.hpp"
#include "o2osim/core/hash.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

inline constexpr const char* kZeroShotCotCue = "Let's think step by step.";

// Deterministic template instantiation. Section order is fixed: role
// examples, state, memories, question, output-format instruction. What a
// variant may see is part of the ablation contract:
//   Traditional      - state only, no emotion tokens anywhere;
//   EmotionPerceived - state + emotion, no memories and no rationale
//                       wording;
//   EmotionAligned   - everything, plus the explanation requirement.
inline std::string build_prompt(const DecisionQuestion& q,
                                const std::vector<std::string>& examples,
                                const std::vector<MemoryRecord>& memories,
                                FrameworkVariant variant) {
    const bool emotional = variant != FrameworkVariant::Traditional;
    const bool aligned = variant == FrameworkVariant::EmotionAligned;
    std::string p;
    p += "You are a food delivery rider deciding whether to take an order.\n";

    if (aligned && !examples.empty()) {
        p += "\nPeople who felt the way you feel now described it like this:\n";
        for (const auto& ex : examples) {
            p += "- " + ex + "\n";
        }
    }

    p += "\nYour state: stamina " + fmt_double(q.agent.stamina) +
         "/100, total income " + fmt_double(q.agent.income) + ", holding " +
         std::to_string(q.agent.held) + " of " +
         std::to_string(q.agent.max_held) + " orders, diligence " +
         diligence_name(q.agent.diligence) + ", income rank " +
         std::to_string(q.agent.rank) + " of " +
         std::to_string(q.agent.n_riders) + ".";
    if (emotional) {
        p += " You are feeling " + emotion_name(q.agent.emotion) +
             " (pleasure " + fmt_double(q.agent.pad.pleasure) + ", arousal " +
             fmt_double(q.agent.pad.arousal) + ", dominance " +
             fmt_double(q.agent.pad.dominance) + ").";
    }
    p += "\n";

    if (aligned && !memories.empty()) {
        p += "\nYour past decisions while feeling " +
             emotion_name(q.agent.emotion) + ":\n";
        for (const auto& m : memories) {
            p += "- [step " + std::to_string(m.created_at) + "] " +
                 answer_name(m.answer) + ": " + m.reason + "\n";
        }
    }

    p += "\n" + q.question_text + "\n";
    if (emotional) {
        p += std::string(kZeroShotCotCue) + "\n";
    }

    if (aligned) {
        p += "\nReply in exactly this form:\nANSWER: <Accept|Reject>\n"
             "REASON: <one sentence explaining your decision>\n";
    } else {
        p += "\nReply with a single line: ANSWER: <Accept|Reject>\n";
    }
    return p;
}

inline std::string prompt_hash(const std::string& prompt) {
    return hex64(fnv1a64(prompt));
}

} // namespace o2o
