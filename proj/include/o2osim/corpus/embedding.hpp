#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "o2osim/core/error.hpp"
#include "o2osim/core/hash.hpp"

namespace o2o {

struct EmbeddingVector {
    std::vector<double> values;

    std::size_t dimension() const { return values.size(); }

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) =
        default;
};

inline double euclidean_distance(const EmbeddingVector& a,
                                 const EmbeddingVector& b) {
    if (a.dimension() != b.dimension()) {
        throw DataError("embedding dimension mismatch: " +
                        std::to_string(a.dimension()) + " vs " +
                        std::to_string(b.dimension()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

inline double cosine_distance(const EmbeddingVector& a,
                              const EmbeddingVector& b) {
    if (a.dimension() != b.dimension()) {
        throw DataError("embedding dimension mismatch");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;

    virtual EmbeddingVector embed(const std::string& text) = 0;

    virtual std::vector<EmbeddingVector> embed_batch(
        const std::vector<std::string>& texts) {
        std::vector<EmbeddingVector> out;
        out.reserve(texts.size());
        for (const auto& t : texts) out.push_back(embed(t));
        return out;
    }

    virtual std::string id() const = 0;
};

// Offline deterministic embedder: L2-normalized signed feature hashing of
// lowercase alphanumeric tokens into kDim buckets. Not a semantic model —
// it exists so clustering, index building and the full decision loop run
// with no network, with stable bytes for any (seed, text).
class HashEmbedder final : public EmbeddingBackend {
public:
    static constexpr std::size_t kDim = 256;

    explicit HashEmbedder(std::uint64_t seed = 42) : seed_(seed) {}

    EmbeddingVector embed(const std::string& text) override {
        if (text.empty()) {
            throw std::invalid_argument("HashEmbedder: empty text");
        }
        EmbeddingVector v;
        v.values.assign(kDim, 0.0);
        std::string token;
        auto flush = [&] {
            if (token.empty()) return;
            const std::uint64_t h = fnv1a64(token, kFnvOffset ^ seed_);
            const std::size_t bucket = static_cast<std::size_t>(h % kDim);
            const double sign = ((h >> 32) & 1u) ? 1.0 : -1.0;
            v.values[bucket] += sign;
            token.clear();
        };
        for (char c : text) {
            if (std::isalnum(static_cast<unsigned char>(c))) {
                token.push_back(static_cast<char>(
                    std::tolower(static_cast<unsigned char>(c))));
            } else {
                flush();
            }
        }
        flush();
        double norm = 0.0;
        for (double x : v.values) norm += x * x;
        if (norm > 0.0) {
            norm = std::sqrt(norm);
            for (double& x : v.values) x /= norm;
        }
        return v;
    }

    std::string id() const override {
        return "fallback-hash-" + std::to_string(kDim) + ":seed=" +
               std::to_string(seed_);
    }

private:
    std::uint64_t seed_;
};

} // namespace o2o
