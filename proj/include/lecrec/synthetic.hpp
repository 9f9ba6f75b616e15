#pragma once

// Seeded ground-truth datasets standing in for real face embeddings, plus the
// brute-force oracles the test suites check the pipeline against.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lecrec/clustering.hpp"
#include "lecrec/core.hpp"
#include "lecrec/recommender.hpp"

namespace lecrec {

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Portable random stream: mt19937_64 words, 53-bit uniforms and Box-Muller
/// normals (cosine branch only). Every draw is spelled out so datasets are
/// reproducible across standard libraries.
class SeededRandom {
public:
    explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::size_t uniform_int(std::size_t lo, std::size_t hi);
    double normal();

private:
    std::mt19937_64 engine_;
};

struct SizeRange {
    std::size_t min;
    std::size_t max;
};

struct RealRange {
    double min;
    double max;
};

struct SyntheticSpec {
    std::string dataset_id = "synthetic";
    std::size_t n_lecturers = 16;
    std::size_t n_videos = 98;
    std::size_t dimension = 32;
    SizeRange lecturers_per_video{1, 5};
    SizeRange frames_per_video{60, 240};
    RealRange presence_fraction{0.05, 0.66};
    double blob_std = 1.0;
    double center_separation = 10.0;  // in units of blob_std
    std::uint64_t seed = 7;

    void check() const;

    /// 16 lecturers over 98 videos, 1-5 per video, mean presence near 6.67%.
    static SyntheticSpec paper_profile(std::uint64_t seed = 7);
};

struct SyntheticDataset {
    VideoManifest manifest;  // ground truth always present
    std::vector<EmbeddingRecord> records;
    /// True lecturer index of each record; never written to disk.
    std::vector<std::size_t> record_lecturers;
    std::vector<Vector> lecturer_centers;
};

/// Throws GenerationError if the centers cannot be placed at the requested separation.
SyntheticDataset generate(const SyntheticSpec& spec);

/// Mean of p(l, v) over every (lecturer, video) pair, absent pairs counting 0.
double mean_presence(const VideoManifest& manifest, std::size_t n_lecturers);

/// Isotropic blobs of `per_blob` points around the given centers; returns points and true labels.
std::pair<std::vector<Vector>, std::vector<std::size_t>> make_blobs(std::span<const Vector> centers,
                                                                      std::size_t per_blob, double std_dev,
                                                                      SeededRandom& rng);

/// `count` centers in `dim` dimensions with pairwise distance >= min_distance.
std::vector<Vector> draw_centers(std::size_t count, std::size_t dim, double min_distance, SeededRandom& rng);

namespace oracle {

/// Silhouette straight from the definition: every distance recomputed, no shared matrix.
SilhouetteBreakdown silhouette(std::span<const Vector> data, std::span<const std::size_t> labels);

/// Agglomerative Ward that recomputes every cluster centroid and every pairwise
/// merge cost from scratch at each step.
Assignment ward(std::span<const Vector> data, std::size_t n_clusters);

struct BestSilhouette {
    std::size_t k;
    Assignment assignment;
    double score;
};

/// Exhaustive search over k = 2..k_max of Ward partitions scored by oracle::silhouette.
BestSilhouette best_silhouette(std::span<const Vector> data, std::size_t k_max);

/// Rankings from ground-truth presence fractions, bypassing all clustering.
/// Lecturer ids are positions in the sorted label list.
std::map<std::string, Ranking> rankings(const std::map<std::string, GroundTruthEntry>& ground_truth,
                                        double threshold = 0.0);

}  // namespace oracle

}  // namespace lecrec
