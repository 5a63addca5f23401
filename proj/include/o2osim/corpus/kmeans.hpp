#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "o2osim/core/error.hpp"
#include "o2osim/core/rng.hpp"
#include "o2osim/corpus/embedding.hpp"

namespace o2o {

// Which end of the distance-sorted member list feeds the demonstration set.
// Farthest (diversity sampling) is the default behavior; Nearest is the
// conventional alternative behind a flag.
enum class SamplingMode { Farthest, Nearest };

inline std::string sampling_name(SamplingMode m) {
    return m == SamplingMode::Farthest ? "farthest" : "nearest";
}

inline SamplingMode parse_sampling(const std::string& s) {
    if (s == "farthest") return SamplingMode::Farthest;
    if (s == "nearest") return SamplingMode::Nearest;
    throw ConfigError("sampling: expected 'farthest' or 'nearest', got '" + s +
                      "'");
}

struct ClusterMember {
    std::string id;
    double distance = 0.0; // Euclidean distance to the cluster centroid
};

struct ClusterResult {
    int cluster_id = 0;
    EmbeddingVector centroid;
    // Sorted by (distance desc, id asc).
    std::vector<ClusterMember> members;
    // min(10, |members|) entries, selected per SamplingMode.
    std::vector<ClusterMember> top10;
};

struct KMeansResult {
    std::vector<int> assignment; // point index -> cluster id
    std::vector<EmbeddingVector> centroids;
    double wcss = 0.0; // within-cluster sum of squared distances
    int iterations = 0;
};

namespace kmeans_detail {

inline double dist_sq(const EmbeddingVector& a, const EmbeddingVector& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    return sum;
}

inline int nearest_centroid(const EmbeddingVector& p,
                            const std::vector<EmbeddingVector>& centroids) {
    int best = 0;
    double best_d = dist_sq(p, centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
        const double d = dist_sq(p, centroids[c]);
        if (d < best_d) { // ties keep the lower cluster id
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

} // namespace kmeans_detail

// Lloyd's algorithm with seeded k-means++ initialization. Fixed limits
// (300 iterations, 1e-6 centroid-shift tolerance) are part of the artifact
// contract so cluster files reproduce bit-for-bit. Empty clusters are
// re-seeded from the point farthest from its assigned centroid.
inline KMeansResult kmeans(const std::vector<EmbeddingVector>& points, int k,
                           std::uint64_t seed, int max_iterations = 300,
                           double tolerance = 1e-6) {
    using namespace kmeans_detail;
    const std::size_t n = points.size();
    if (k < 1) throw DataError("kmeans: k must be >= 1");
    if (n < static_cast<std::size_t>(k)) {
        throw DataError("kmeans: " + std::to_string(n) + " points with k=" +
                        std::to_string(k));
    }
    const std::size_t dim = points[0].dimension();
    for (const auto& p : points) {
        if (p.dimension() != dim) {
            throw DataError("kmeans: inconsistent embedding dimensions");
        }
    }

    Rng rng(seed);
    KMeansResult res;
    res.centroids.reserve(static_cast<std::size_t>(k));

    // k-means++ seeding.
    res.centroids.push_back(points[rng.bounded(n)]);
    std::vector<double> d2(n, 0.0);
    while (res.centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = dist_sq(points[i], res.centroids[0]);
            for (std::size_t c = 1; c < res.centroids.size(); ++c) {
                best = std::min(best, dist_sq(points[i], res.centroids[c]));
            }
            d2[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            // All remaining points coincide with a centroid; duplicate one.
            res.centroids.push_back(points[rng.bounded(n)]);
            continue;
        }
        double pick = rng.uniform01() * total;
        std::size_t chosen = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            pick -= d2[i];
            if (pick <= 0.0) {
                chosen = i;
                break;
            }
        }
        res.centroids.push_back(points[chosen]);
    }

    res.assignment.assign(n, 0);
    double prev_wcss = -1.0;
    for (int iter = 0; iter < max_iterations; ++iter) {
        res.iterations = iter + 1;

        double wcss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            res.assignment[i] = nearest_centroid(points[i], res.centroids);
            wcss += dist_sq(points[i], res.centroids[static_cast<std::size_t>(
                                           res.assignment[i])]);
        }
        // Lloyd's never worsens the objective; a regression means a bug.
        if (prev_wcss >= 0.0 && wcss > prev_wcss + 1e-9) {
            throw InvariantViolation(
                "kmeans: within-cluster sum of squares increased (" +
                std::to_string(prev_wcss) + " -> " + std::to_string(wcss) + ")");
        }
        prev_wcss = wcss;
        res.wcss = wcss;

        // Re-seed empty clusters from the globally farthest point.
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (int a : res.assignment) ++counts[static_cast<std::size_t>(a)];
        bool reseeded = false;
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            std::size_t far_idx = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto owner =
                    static_cast<std::size_t>(res.assignment[i]);
                if (counts[owner] <= 1) continue; // do not empty another one
                const double d = dist_sq(points[i], res.centroids[owner]);
                if (d > far_d) {
                    far_d = d;
                    far_idx = i;
                }
            }
            --counts[static_cast<std::size_t>(res.assignment[far_idx])];
            res.assignment[far_idx] = c;
            ++counts[static_cast<std::size_t>(c)];
            res.centroids[static_cast<std::size_t>(c)] = points[far_idx];
            reseeded = true;
        }
        if (reseeded) {
            prev_wcss = -1.0; // objective jumps when a centroid teleports
        }

        // Means.
        std::vector<EmbeddingVector> next(
            static_cast<std::size_t>(k),
            EmbeddingVector{std::vector<double>(dim, 0.0)});
        for (std::size_t i = 0; i < n; ++i) {
            auto& acc = next[static_cast<std::size_t>(res.assignment[i])];
            for (std::size_t j = 0; j < dim; ++j) {
                acc.values[j] += points[i].values[j];
            }
        }
        double shift_sq = 0.0;
        for (int c = 0; c < k; ++c) {
            auto& acc = next[static_cast<std::size_t>(c)];
            const double cnt =
                static_cast<double>(counts[static_cast<std::size_t>(c)]);
            for (std::size_t j = 0; j < dim; ++j) acc.values[j] /= cnt;
            shift_sq = std::max(
                shift_sq, dist_sq(acc, res.centroids[static_cast<std::size_t>(c)]));
        }
        res.centroids = std::move(next);
        if (!reseeded && shift_sq < tolerance * tolerance) break;
    }

    // Final assignment against the converged centroids.
    res.wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        res.assignment[i] = nearest_centroid(points[i], res.centroids);
        res.wcss += dist_sq(
            points[i],
            res.centroids[static_cast<std::size_t>(res.assignment[i])]);
    }
    return res;
}

// Clusters (id, vector) pairs and produces per-cluster member lists sorted
// descending by distance to the centroid, plus the demonstration slice.
inline std::vector<ClusterResult> cluster_and_sample(
    const std::vector<std::string>& ids,
    const std::vector<EmbeddingVector>& vectors, int k, std::uint64_t seed,
    SamplingMode sampling = SamplingMode::Farthest) {
    if (ids.size() != vectors.size()) {
        throw DataError("cluster_and_sample: ids/vectors size mismatch");
    }
    const KMeansResult km = kmeans(vectors, k, seed);

    std::vector<ClusterResult> out(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        out[static_cast<std::size_t>(c)].cluster_id = c;
        out[static_cast<std::size_t>(c)].centroid =
            km.centroids[static_cast<std::size_t>(c)];
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto& cluster = out[static_cast<std::size_t>(km.assignment[i])];
        cluster.members.push_back(
            {ids[i], euclidean_distance(vectors[i], cluster.centroid)});
    }
    for (auto& cluster : out) {
        std::sort(cluster.members.begin(), cluster.members.end(),
                  [](const ClusterMember& a, const ClusterMember& b) {
                      if (a.distance != b.distance) return a.distance > b.distance;
                      return a.id < b.id;
                  });
        const std::size_t take = std::min<std::size_t>(10, cluster.members.size());
        if (sampling == SamplingMode::Farthest) {
            cluster.top10.assign(cluster.members.begin(),
                                 cluster.members.begin() +
                                     static_cast<std::ptrdiff_t>(take));
        } else {
            // Nearest: the `take` smallest distances, ascending.
            cluster.top10.assign(cluster.members.end() -
                                     static_cast<std::ptrdiff_t>(take),
                                 cluster.members.end());
            std::sort(cluster.top10.begin(), cluster.top10.end(),
                      [](const ClusterMember& a, const ClusterMember& b) {
                          if (a.distance != b.distance) return a.distance < b.distance;
                          return a.id < b.id;
                      });
        }
    }
    return out;
}

} // namespace o2o
