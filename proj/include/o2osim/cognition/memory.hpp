#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "o2osim/cognition/question.hpp"
#include "o2osim/core/types.hpp"

namespace o2o {

// One stored Self-Explanation demonstration: the question the agent faced,
// what it decided, and why.
struct MemoryRecord {
    std::string question_digest;
    Answer answer = Answer::Reject;
    std::string reason;
    int created_at = 0; // simulation step
    EmotionLabel emotion_at_decision = EmotionLabel::Neutral;
    std::uint64_t seq = 0; // insertion order, breaks created_at ties
};

inline constexpr int kRecallLimit = 5;

// TTL-governed store, one per rider. Eviction happens on recall: a record
// whose age exceeds the ttl is removed; age exactly equal to the ttl is
// still valid (inclusive boundary).
class MemoryStore {
public:
    void insert(MemoryRecord rec) {
        rec.seq = next_seq_++;
        records_.push_back(std::move(rec));
    }

    std::size_t size() const { return records_.size(); }
    const std::vector<MemoryRecord>& records() const { return records_; }

    void evict_expired(int now, int ttl) {
        records_.erase(std::remove_if(records_.begin(), records_.end(),
                                      [&](const MemoryRecord& r) {
                                          return now - r.created_at > ttl;
                                      }),
                       records_.end());
    }

    // Evicts expired records, then returns up to kRecallLimit surviving
    // records whose emotion matches the current one, newest first.
    std::vector<MemoryRecord> recall(EmotionLabel current_emotion, int now,
                                     int ttl) {
        evict_expired(now, ttl);
        std::vector<MemoryRecord> matched;
        for (const auto& r : records_) {
            if (r.emotion_at_decision == current_emotion) matched.push_back(r);
        }
        std::sort(matched.begin(), matched.end(),
                  [](const MemoryRecord& a, const MemoryRecord& b) {
                      if (a.created_at != b.created_at) {
                          return a.created_at > b.created_at;
                      }
                      return a.seq > b.seq;
                  });
        if (matched.size() > kRecallLimit) matched.resize(kRecallLimit);
        return matched;
    }

    // Snapshot support.
    std::uint64_t next_seq() const { return next_seq_; }
    void restore(std::vector<MemoryRecord> records, std::uint64_t next_seq) {
        records_ = std::move(records);
        next_seq_ = next_seq;
    }

private:
    std::vector<MemoryRecord> records_;
    std::uint64_t next_seq_ = 0;
};

} // namespace o2o
