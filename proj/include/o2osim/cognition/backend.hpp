#pragma once

#include <deque>
#include <functional>
#include <string>

#include "o2osim/cognition/policy.hpp"
#include "o2osim/cognition/question.hpp"
#include "o2osim/core/error.hpp"

namespace o2o {

// Produces raw response text for a prompt. Implementations throw
// BackendError when they cannot answer (after their own retries); the
// decision loop then falls back to Reject and logs an incident.
class DecisionBackend {
public:
    virtual ~DecisionBackend() = default;
    virtual std::string complete(const std::string& prompt,
                                 const DecisionQuestion& question) = 0;
    virtual std::string id() const = 0;
};

// Wraps rule_based_policy in the common wire format so the full
// prompt -> text -> parse pipeline runs even offline.
class RuleBackend final : public DecisionBackend {
public:
    std::string complete(const std::string&,
                         const DecisionQuestion& question) override {
        const DecisionResponse r = rule_based_policy(question);
        return "ANSWER: " + answer_name(r.answer) + "\nREASON: " + r.reason + "\n";
    }

    std::string id() const override { return "rule"; }
};

// Test backend: replays canned responses in order, repeating the last one.
class ScriptedBackend final : public DecisionBackend {
public:
    explicit ScriptedBackend(std::deque<std::string> responses)
        : responses_(std::move(responses)) {}

    std::string complete(const std::string& prompt,
                         const DecisionQuestion&) override {
        if (on_call) on_call(prompt);
        if (responses_.empty()) throw BackendError("scripted backend exhausted");
        std::string r = responses_.front();
        if (responses_.size() > 1) responses_.pop_front();
        return r;
    }

    std::string id() const override { return "scripted"; }

    std::function<void(const std::string&)> on_call;

private:
    std::deque<std::string> responses_;
};

} // namespace o2o
