#pragma once

// Per-video phase: embeddings -> face clusters, centroids, presence frames.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lecrec/clustering.hpp"
#include "lecrec/core.hpp"

namespace lecrec {

using FrameSet = std::set<std::size_t>;

struct FrameInterval {
    std::size_t start;
    std::size_t end;  // inclusive

    bool operator==(const FrameInterval&) const = default;
};

struct VideoCluster {
    std::size_t cluster_id;
    Centroid centroid;
    FrameSet frames;

    bool operator==(const VideoCluster&) const = default;
};

struct VideoRepresentation {
    std::string video_id;
    std::size_t sampled_frame_count = 1;
    std::vector<VideoCluster> clusters;
    /// Empty for the single-cluster fallback and for videos without faces.
    std::optional<double> silhouette_score;

    const VideoCluster& cluster(std::size_t cluster_id) const;

    bool operator==(const VideoRepresentation&) const = default;
};

struct Timeline {
    struct Track {
        std::size_t cluster_id;
        std::vector<FrameInterval> intervals;

        bool operator==(const Track&) const = default;
    };
    std::string video_id;
    std::vector<Track> tracks;

    bool operator==(const Timeline&) const = default;
};

/// Clusters one video's face embeddings. Throws ValidationError if any record
/// belongs to another video or violates the manifest.
VideoRepresentation represent_video(std::span<const EmbeddingRecord> records, const std::string& video_id,
                                    const VideoManifest& manifest, const BlindClusteringParams& params);

/// Fraction of the video's sampled frames in which the cluster appears.
double presence_fraction(const VideoRepresentation& rep, std::size_t cluster_id);

/// Maximal runs of consecutive frame indices, ascending.
std::vector<FrameInterval> compress_frames(const FrameSet& frames);
FrameSet expand_intervals(std::span<const FrameInterval> intervals);

Timeline build_timeline(const VideoRepresentation& rep);

}  // namespace lecrec
