#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "o2osim/core/error.hpp"
#include "o2osim/corpus/kmeans.hpp"
#include "o2osim/corpus/record.hpp"

namespace o2o {

inline constexpr int kIndexSchemaVersion = 1;

struct IndexExample {
    std::string id;
    std::string text;
};

struct IndexCluster {
    int cluster_id = 0;
    EmbeddingVector centroid;
    std::vector<ClusterMember> members;
    std::vector<IndexExample> examples; // the top10 slice, with texts
};

// Spec op: the cluster whose centroid is nearest to the query embedding;
// ties break toward the lower cluster id.
inline int closest_cluster(const EmbeddingVector& query,
                           const std::vector<IndexCluster>& clusters) {
    if (clusters.empty()) throw DataError("closest_cluster: no clusters");
    int best = 0;
    double best_d = euclidean_distance(query, clusters[0].centroid);
    for (std::size_t i = 1; i < clusters.size(); ++i) {
        const double d = euclidean_distance(query, clusters[i].centroid);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

// Per-emotion cluster artifact: Algorithm 1 run once per emotion
// sub-corpus, persisted as versioned JSON and consumed by the decision
// loop at run time.
class CorpusIndex {
public:
    std::string backend_id;
    std::uint64_t seed = 0;
    int k = 0;
    SamplingMode sampling = SamplingMode::Farthest;
    std::size_t dimension = 0;
    // Only emotions present in the corpus appear here (Neutral never does).
    std::map<EmotionLabel, std::vector<IndexCluster>> sections;

    static CorpusIndex build(const std::vector<CorpusRecord>& records,
                             EmbeddingBackend& backend, int k,
                             std::uint64_t seed,
                             SamplingMode sampling = SamplingMode::Farthest) {
        CorpusIndex index;
        index.backend_id = backend.id();
        index.seed = seed;
        index.k = k;
        index.sampling = sampling;

        std::map<EmotionLabel, std::vector<const CorpusRecord*>> by_emotion;
        for (const auto& rec : records) {
            by_emotion[rec.emotion].push_back(&rec);
        }
        for (auto& [emotion, subset] : by_emotion) {
            // Embedding results are applied in record-id order so the
            // clustering input is deterministic regardless of load order.
            std::sort(subset.begin(), subset.end(),
                      [](const CorpusRecord* a, const CorpusRecord* b) {
                          return a->id < b->id;
                      });
            if (subset.size() < static_cast<std::size_t>(k)) {
                throw DataError("emotion " + emotion_name(emotion) + ": " +
                                std::to_string(subset.size()) +
                                " records but cluster_k=" + std::to_string(k));
            }
            std::vector<std::string> ids;
            std::vector<EmbeddingVector> vectors;
            std::map<std::string, const CorpusRecord*> by_id;
            ids.reserve(subset.size());
            vectors.reserve(subset.size());
            for (const CorpusRecord* rec : subset) {
                ids.push_back(rec->id);
                vectors.push_back(embed_record(*rec, backend));
                by_id[rec->id] = rec;
            }
            for (const auto& v : vectors) {
                if (index.dimension == 0) index.dimension = v.dimension();
                if (v.dimension() != index.dimension) {
                    throw DataError("embedding dimension mismatch within corpus");
                }
            }
            auto clusters = cluster_and_sample(ids, vectors, k, seed, sampling);
            std::vector<IndexCluster> stored;
            stored.reserve(clusters.size());
            for (auto& c : clusters) {
                IndexCluster ic;
                ic.cluster_id = c.cluster_id;
                ic.centroid = std::move(c.centroid);
                ic.members = std::move(c.members);
                for (const auto& m : c.top10) {
                    ic.examples.push_back({m.id, by_id.at(m.id)->text});
                }
                stored.push_back(std::move(ic));
            }
            index.sections.emplace(emotion, std::move(stored));
        }
        return index;
    }

    // Records with a separate context embed both parts and average them.
    static EmbeddingVector embed_record(const CorpusRecord& rec,
                                        EmbeddingBackend& backend) {
        EmbeddingVector v = backend.embed(rec.text);
        if (!rec.context.empty()) {
            const EmbeddingVector c = backend.embed(rec.context);
            if (c.dimension() != v.dimension()) {
                throw DataError("embedding dimension mismatch (context vs text)");
            }
            for (std::size_t i = 0; i < v.values.size(); ++i) {
                v.values[i] = 0.5 * (v.values[i] + c.values[i]);
            }
        }
        return v;
    }

    // Up to 10 demonstration texts for the rider's current emotion: pick
    // the closest cluster in that emotion's section and return its stored
    // example texts. Empty for Neutral or for emotions absent from the
    // corpus (the decision proceeds without examples).
    std::vector<std::string> role_examples(EmotionLabel emotion,
                                           const std::string& question,
                                           EmbeddingBackend& backend,
                                           int* out_cluster = nullptr) const {
        auto it = sections.find(emotion);
        if (it == sections.end() || it->second.empty()) return {};
        const EmbeddingVector q = backend.embed(question);
        const int cluster = closest_cluster(q, it->second);
        if (out_cluster) *out_cluster = cluster;
        std::vector<std::string> texts;
        for (const auto& ex :
             it->second[static_cast<std::size_t>(cluster)].examples) {
            texts.push_back(ex.text);
        }
        return texts;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema_version"] = kIndexSchemaVersion;
        j["backend"] = backend_id;
        j["seed"] = seed;
        j["k"] = k;
        j["sampling"] = sampling_name(sampling);
        j["metric"] = "euclidean";
        j["dimension"] = dimension;
        nlohmann::json sec = nlohmann::json::object();
        for (const auto& [emotion, clusters] : sections) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : clusters) {
                nlohmann::json jc;
                jc["cluster_id"] = c.cluster_id;
                jc["centroid"] = c.centroid.values;
                nlohmann::json members = nlohmann::json::array();
                for (const auto& m : c.members) {
                    members.push_back({{"id", m.id}, {"distance", m.distance}});
                }
                jc["members"] = std::move(members);
                nlohmann::json examples = nlohmann::json::array();
                for (const auto& ex : c.examples) {
                    examples.push_back({{"id", ex.id}, {"text", ex.text}});
                }
                jc["top10"] = std::move(examples);
                arr.push_back(std::move(jc));
            }
            sec[emotion_name(emotion)] = std::move(arr);
        }
        j["emotions"] = std::move(sec);
        return j;
    }

    static CorpusIndex from_json(const nlohmann::json& j) {
        if (!j.contains("schema_version") ||
            j["schema_version"].get<int>() != kIndexSchemaVersion) {
            throw DataError("cluster artifact: unsupported schema version");
        }
        CorpusIndex index;
        index.backend_id = j.at("backend").get<std::string>();
        index.seed = j.at("seed").get<std::uint64_t>();
        index.k = j.at("k").get<int>();
        index.sampling = parse_sampling(j.at("sampling").get<std::string>());
        index.dimension = j.at("dimension").get<std::size_t>();
        for (const auto& [name, arr] : j.at("emotions").items()) {
            auto emotion = parse_emotion(name);
            if (!emotion) {
                throw DataError("cluster artifact: unknown emotion '" + name + "'");
            }
            std::vector<IndexCluster> clusters;
            for (const auto& jc : arr) {
                IndexCluster c;
                c.cluster_id = jc.at("cluster_id").get<int>();
                c.centroid.values =
                    jc.at("centroid").get<std::vector<double>>();
                for (const auto& m : jc.at("members")) {
                    c.members.push_back({m.at("id").get<std::string>(),
                                         m.at("distance").get<double>()});
                }
                for (const auto& ex : jc.at("top10")) {
                    c.examples.push_back({ex.at("id").get<std::string>(),
                                          ex.at("text").get<std::string>()});
                }
                clusters.push_back(std::move(c));
            }
            index.sections.emplace(*emotion, std::move(clusters));
        }
        return index;
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write cluster artifact: " + path);
        out << to_json().dump(2) << "\n";
    }

    static CorpusIndex load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open cluster artifact: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError("cluster artifact " + path + ": " + e.what());
        }
        return from_json(j);
    }
};

} // namespace o2o
