#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lecrec/core.hpp"

namespace lecrec {

struct SilhouetteBreakdown {
    std::vector<double> per_sample;
    double score = 0.0;
};

/// Mean silhouette coefficient of a labeling. Samples alone in their cluster
/// get a coefficient of 0. Requires k >= 2.
SilhouetteBreakdown silhouette(std::span<const Vector> data, const Assignment& assignment);

/// Same as silhouette() but over a precomputed n x n distance matrix (row-major).
SilhouetteBreakdown silhouette_from_distances(std::span<const double> distances, const Assignment& assignment);

/// Full pairwise Euclidean distance matrix, row-major n x n.
std::vector<double> pairwise_distances(std::span<const Vector> data);

/// Ward agglomeration history. Each cluster lives in the slot of its smallest
/// original point index, so merge (a, b) always has a < b and the merged
/// cluster stays in slot a.
class WardDendrogram {
public:
    struct Merge {
        std::size_t a;
        std::size_t b;
        double cost;  // variance increase n_a n_b / (n_a + n_b) * |c_a - c_b|^2
    };

    explicit WardDendrogram(std::span<const Vector> data);

    std::size_t size() const { return n_; }
    const std::vector<Merge>& merges() const { return merges_; }

    /// Partition left after n - n_clusters merges, labels in order of first occurrence.
    Assignment cut(std::size_t n_clusters) const;

private:
    std::size_t n_;
    std::vector<Merge> merges_;
};

/// Agglomerative Ward clustering down to exactly n_clusters clusters.
/// Equal-cost candidates are resolved by the lexicographically smallest
/// (min index, max index) pair of cluster representatives.
Assignment ward_cluster(std::span<const Vector> data, std::size_t n_clusters);

struct BlindClusteringParams {
    std::size_t patience = 5;  // t
    double omega = 0.2;        // silhouette floor

    void check() const;
};

struct BlindClusteringResult {
    Assignment assignment;
    /// Silhouette of the returned configuration; empty when it is the one-cluster fallback.
    std::optional<double> silhouette;
    /// (k, score) for every configuration evaluated, in evaluation order.
    std::vector<std::pair<std::size_t, double>> trace;
};

/// Increases the cluster count from 2 while the silhouette keeps up, tolerating
/// `patience` consecutive drops; falls back to a single cluster when the best
/// score stays under omega.
BlindClusteringResult blind_clustering_detailed(std::span<const Vector> data, const BlindClusteringParams& params);

Assignment blind_clustering(std::span<const Vector> data, const BlindClusteringParams& params);

struct Centroid {
    Vector vector;
    std::size_t member_count = 0;

    bool operator==(const Centroid&) const = default;
};

/// Per-cluster component-wise means, ordered by cluster label.
std::vector<Centroid> centroids(std::span<const Vector> data, const Assignment& assignment);

}  // namespace lecrec
