#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "o2osim/cognition/backend.hpp"
#include "o2osim/cognition/memory.hpp"
#include "o2osim/cognition/parse.hpp"
#include "o2osim/cognition/prompt.hpp"
#include "o2osim/cognition/question.hpp"
#include "o2osim/core/error.hpp"
#include "o2osim/corpus/index.hpp"

namespace o2o {

// One line of the decision trace log: what the loop did and in which
// order, so runs can be audited offline.
struct TraceEntry {
    int step = 0;
    std::uint64_t rider_id = 0;
    std::uint64_t order_id = 0;
    std::string question_digest;
    FrameworkVariant variant = FrameworkVariant::Traditional;
    std::string prompt_hash;
    Answer answer = Answer::Reject;
    std::string reason;
    EmotionLabel emotion = EmotionLabel::Neutral;
    bool incident = false;
    std::string incident_kind; // "backend-unavailable" | "parse-failure"
    std::string backend_id;
    std::vector<std::string> stages; // executed pipeline stages, in order
    int cluster_id = -1;
    std::size_t n_examples = 0;
    std::size_t n_memories = 0;
};

inline nlohmann::json trace_to_json(const TraceEntry& t) {
    nlohmann::json j;
    j["step"] = t.step;
    j["rider"] = t.rider_id;
    j["order"] = t.order_id;
    j["digest"] = t.question_digest;
    j["variant"] = variant_name(t.variant);
    j["prompt_hash"] = t.prompt_hash;
    j["answer"] = answer_name(t.answer);
    j["reason"] = t.reason;
    j["emotion"] = emotion_name(t.emotion);
    j["incident"] = t.incident;
    if (t.incident) j["incident_kind"] = t.incident_kind;
    j["backend"] = t.backend_id;
    j["stages"] = t.stages;
    j["cluster"] = t.cluster_id;
    j["examples"] = t.n_examples;
    j["memories"] = t.n_memories;
    return j;
}

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void write(const TraceEntry& entry) = 0;
};

class JsonlTraceSink final : public TraceSink {
public:
    explicit JsonlTraceSink(const std::string& path)
        : out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open decision trace: " + path);
    }

    void write(const TraceEntry& entry) override {
        out_ << trace_to_json(entry).dump() << "\n";
    }

private:
    std::ofstream out_;
};

class VectorTraceSink final : public TraceSink {
public:
    void write(const TraceEntry& entry) override { entries.push_back(entry); }
    std::vector<TraceEntry> entries;
};

struct DecisionContext {
    FrameworkVariant variant = FrameworkVariant::Traditional;
    DecisionBackend* backend = nullptr;
    const CorpusIndex* index = nullptr;      // EmotionAligned demonstrations
    EmbeddingBackend* embedder = nullptr;    // must match the index backend
    MemoryStore* memory = nullptr;           // the deciding rider's store
    int now = 0;
    int memory_ttl = 0;
    std::uint64_t rider_id = 0;
    std::uint64_t order_id = 0;
    TraceSink* trace = nullptr;

    // Filled by decide(): whether the returned response is a fallback
    // rather than a genuine decision.
    bool out_incident = false;
    std::string out_incident_kind;
};

// The Self-Explanation loop: locate demonstrations for the current emotion
// (encode the question, pick the closest cluster), recall timely memories,
// build the variant's prompt, query the backend, parse, and store the
// (question, answer, reason) demonstration. Backend or parse failures fall
// back to Reject with an incident flag; the simulation never stalls on a
// decision.
inline DecisionResponse decide(const DecisionQuestion& q, DecisionContext& ctx) {
    if (!ctx.backend) throw ConfigError("decide: no decision backend configured");
    const bool aligned = ctx.variant == FrameworkVariant::EmotionAligned;
    ctx.out_incident = false;
    ctx.out_incident_kind.clear();

    TraceEntry trace;
    trace.step = ctx.now;
    trace.rider_id = ctx.rider_id;
    trace.order_id = ctx.order_id;
    trace.question_digest = question_digest(q);
    trace.variant = ctx.variant;
    trace.emotion = q.agent.emotion;
    trace.backend_id = ctx.backend->id();

    std::vector<std::string> examples;
    if (aligned && ctx.index && ctx.embedder) {
        trace.stages.push_back("encode");
        examples = ctx.index->role_examples(q.agent.emotion, q.question_text,
                                            *ctx.embedder, &trace.cluster_id);
        trace.stages.push_back("closest-cluster");
    }
    trace.n_examples = examples.size();

    std::vector<MemoryRecord> memories;
    if (aligned && ctx.memory) {
        memories = ctx.memory->recall(q.agent.emotion, ctx.now, ctx.memory_ttl);
        trace.stages.push_back("recall");
    }
    trace.n_memories = memories.size();

    const std::string prompt = build_prompt(q, examples, memories, ctx.variant);
    trace.prompt_hash = prompt_hash(prompt);
    trace.stages.push_back("prompt");

    DecisionResponse resp;
    resp.backend_id = ctx.backend->id();
    try {
        const std::string raw = ctx.backend->complete(prompt, q);
        trace.stages.push_back("backend");
        const ParsedResponse parsed = parse_response(raw);
        trace.stages.push_back("parse");
        resp.answer = parsed.answer;
        resp.reason = parsed.reason;
    } catch (const BackendError&) {
        trace.stages.push_back("backend");
        resp.answer = Answer::Reject;
        resp.reason = "backend-unavailable";
        trace.incident = true;
        trace.incident_kind = "backend-unavailable";
    } catch (const ResponseParseError&) {
        trace.stages.push_back("parse");
        resp.answer = Answer::Reject;
        resp.reason = "parse-failure";
        trace.incident = true;
        trace.incident_kind = "parse-failure";
    }
    ctx.out_incident = trace.incident;
    ctx.out_incident_kind = trace.incident_kind;

    if (aligned && ctx.memory) {
        MemoryRecord rec;
        rec.question_digest = trace.question_digest;
        rec.answer = resp.answer;
        rec.reason = resp.reason;
        rec.created_at = ctx.now;
        rec.emotion_at_decision = q.agent.emotion;
        ctx.memory->insert(std::move(rec));
        trace.stages.push_back("store");
    }

    trace.answer = resp.answer;
    trace.reason = resp.reason;
    if (ctx.trace) ctx.trace->write(trace);
    return resp;
}

} // namespace o2o
