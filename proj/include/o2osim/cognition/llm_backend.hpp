#pragma once

#include <chrono>
#include <ostream>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "o2osim/cognition/backend.hpp"
#include "o2osim/core/error.hpp"
#include "o2osim/corpus/embedding.hpp"

namespace o2o {

// Chat-completion wire client. Request:
//   POST <path>  {"model": <model>, "messages":
//                  [{"role": "user", "content": <prompt>}]}
// Response: {"choices": [{"message": {"content": <text>}}]}
// Transport failures retry with exponential backoff; after max_attempts the
// call throws BackendError and the decision loop applies its fallback.
struct LlmBackendConfig {
    std::string endpoint = "http://127.0.0.1:8080";
    std::string path = "/v1/chat/completions";
    std::string model = "default";
    std::string token;            // sent as "Authorization: Bearer <token>"
    int timeout_ms = 30000;
    int max_attempts = 3;
    int backoff_base_ms = 250;    // doubles per attempt
};

class LlmBackend final : public DecisionBackend {
public:
    explicit LlmBackend(LlmBackendConfig cfg, std::ostream* request_log = nullptr)
        : cfg_(std::move(cfg)), log_(request_log) {}

    std::string complete(const std::string& prompt,
                         const DecisionQuestion&) override {
        nlohmann::json body;
        body["model"] = cfg_.model;
        body["messages"] = {{{"role", "user"}, {"content", prompt}}};
        const std::string payload = body.dump();

        std::string last_error;
        for (int attempt = 1; attempt <= cfg_.max_attempts; ++attempt) {
            if (attempt > 1) {
                const int delay = cfg_.backoff_base_ms << (attempt - 2);
                std::this_thread::sleep_for(std::chrono::milliseconds(delay));
            }
            httplib::Client client(cfg_.endpoint);
            client.set_connection_timeout(0, cfg_.timeout_ms * 1000);
            client.set_read_timeout(cfg_.timeout_ms / 1000,
                                    (cfg_.timeout_ms % 1000) * 1000);
            httplib::Headers headers;
            if (!cfg_.token.empty()) {
                headers.emplace("Authorization", "Bearer " + cfg_.token);
            }
            auto res = client.Post(cfg_.path, headers, payload, "application/json");
            log_attempt(attempt, res ? res->status : -1);
            if (!res) {
                last_error = "transport error (" +
                             httplib::to_string(res.error()) + ")";
                continue;
            }
            if (res->status != 200) {
                last_error = "HTTP " + std::to_string(res->status);
                continue;
            }
            try {
                nlohmann::json reply = nlohmann::json::parse(res->body);
                return reply.at("choices").at(0).at("message").at("content")
                    .get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                last_error = std::string("bad response body: ") + e.what();
                continue;
            }
        }
        throw BackendError("llm backend failed after " +
                           std::to_string(cfg_.max_attempts) + " attempts: " +
                           last_error);
    }

    std::string id() const override { return "llm:" + cfg_.model; }

private:
    void log_attempt(int attempt, int status) {
        if (!log_) return;
        nlohmann::json line;
        line["attempt"] = attempt;
        line["endpoint"] = cfg_.endpoint;
        line["path"] = cfg_.path;
        line["model"] = cfg_.model;
        line["status"] = status;
        *log_ << line.dump() << "\n";
        log_->flush();
    }

    LlmBackendConfig cfg_;
    std::ostream* log_;
};

// Remote embedding service client: POST {"texts": [...]} to <path>,
// expecting {"vectors": [[...], ...]}. Same retry discipline as the chat
// client.
struct RemoteEmbedderConfig {
    std::string endpoint = "http://127.0.0.1:8080";
    std::string path = "/embed";
    std::string token;
    int timeout_ms = 30000;
    int max_attempts = 3;
    int backoff_base_ms = 250;
};

class RemoteEmbedder final : public EmbeddingBackend {
public:
    explicit RemoteEmbedder(RemoteEmbedderConfig cfg) : cfg_(std::move(cfg)) {}

    EmbeddingVector embed(const std::string& text) override {
        if (text.empty()) {
            throw std::invalid_argument("RemoteEmbedder: empty text");
        }
        auto vectors = embed_batch({text});
        return vectors.at(0);
    }

    std::vector<EmbeddingVector> embed_batch(
        const std::vector<std::string>& texts) override {
        nlohmann::json body;
        body["texts"] = texts;
        const std::string payload = body.dump();

        std::string last_error;
        for (int attempt = 1; attempt <= cfg_.max_attempts; ++attempt) {
            if (attempt > 1) {
                const int delay = cfg_.backoff_base_ms << (attempt - 2);
                std::this_thread::sleep_for(std::chrono::milliseconds(delay));
            }
            httplib::Client client(cfg_.endpoint);
            client.set_connection_timeout(0, cfg_.timeout_ms * 1000);
            client.set_read_timeout(cfg_.timeout_ms / 1000,
                                    (cfg_.timeout_ms % 1000) * 1000);
            httplib::Headers headers;
            if (!cfg_.token.empty()) {
                headers.emplace("Authorization", "Bearer " + cfg_.token);
            }
            auto res = client.Post(cfg_.path, headers, payload, "application/json");
            if (!res) {
                last_error = "transport error (" +
                             httplib::to_string(res.error()) + ")";
                continue;
            }
            if (res->status != 200) {
                last_error = "HTTP " + std::to_string(res->status);
                continue;
            }
            try {
                nlohmann::json reply = nlohmann::json::parse(res->body);
                std::vector<EmbeddingVector> out;
                for (const auto& row : reply.at("vectors")) {
                    out.push_back({row.get<std::vector<double>>()});
                }
                if (out.size() != texts.size()) {
                    throw DataError("embedding service returned " +
                                    std::to_string(out.size()) +
                                    " vectors for " +
                                    std::to_string(texts.size()) + " texts");
                }
                // Mixed dimensions inside one reply are a service bug, not
                // a retryable transport failure.
                for (const auto& v : out) {
                    if (v.dimension() != out[0].dimension()) {
                        throw DataError(
                            "embedding service returned mixed dimensions");
                    }
                }
                return out;
            } catch (const nlohmann::json::exception& e) {
                last_error = std::string("bad response body: ") + e.what();
                continue;
            }
        }
        throw BackendError("embedding backend failed after " +
                           std::to_string(cfg_.max_attempts) + " attempts: " +
                           last_error);
    }

    std::string id() const override {
        return "remote:" + cfg_.endpoint + cfg_.path;
    }

private:
    RemoteEmbedderConfig cfg_;
};

} // namespace o2o
