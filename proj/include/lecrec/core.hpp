#pragma once

// Domain types and primitives shared by every pipeline stage.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lecrec {

using Vector = std::vector<double>;

/// Bad arguments or malformed in-memory data.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input files parsed fine but contradict each other (manifest vs records, unknown ids).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One detected face in one sampled frame.
struct EmbeddingRecord {
    std::string video_id;
    std::size_t frame_index = 0;  // index into the sampled (1 fps) frame sequence
    std::size_t face_index = 0;
    Vector vector;

    bool operator==(const EmbeddingRecord&) const = default;
};

struct VideoEntry {
    std::string video_id;
    std::size_t sampled_frame_count = 1;

    bool operator==(const VideoEntry&) const = default;
};

/// Ground-truth annotation of one video: lecturer labels, optionally with
/// their exact presence fractions (known for synthetic data).
struct GroundTruthEntry {
    std::set<std::string> lecturers;
    std::map<std::string, double> presence;

    bool operator==(const GroundTruthEntry&) const = default;
};

struct VideoManifest {
    std::string dataset_id;
    std::size_t dimension = 0;
    double frame_rate = 1.0;
    std::vector<VideoEntry> videos;
    std::optional<std::map<std::string, GroundTruthEntry>> ground_truth;

    const VideoEntry* find(const std::string& video_id) const;
    const VideoEntry& at(const std::string& video_id) const;

    /// Throws InvalidInput when ids repeat, counts are zero, or ground truth
    /// misses a video.
    void check() const;

    bool operator==(const VideoManifest&) const = default;
};

/// A flat partition of n points into k non-empty clusters.
class Assignment {
public:
    /// Rejects out-of-range labels and empty clusters.
    Assignment(std::vector<std::size_t> labels, std::size_t k);

    /// All points in cluster 0.
    static Assignment one_cluster(std::size_t n);

    /// Relabels arbitrary integer labels to 0..k-1 in order of first occurrence.
    static Assignment from_raw(std::span<const std::size_t> raw);

    std::size_t k() const { return k_; }
    std::size_t size() const { return labels_.size(); }
    std::size_t operator[](std::size_t i) const { return labels_[i]; }
    const std::vector<std::size_t>& labels() const { return labels_; }

    /// Point indices of each cluster, clusters in label order, members ascending.
    std::vector<std::vector<std::size_t>> members() const;

    bool operator==(const Assignment&) const = default;

private:
    std::vector<std::size_t> labels_;
    std::size_t k_;
};

double euclidean_distance(std::span<const double> x, std::span<const double> y);
double squared_distance(std::span<const double> x, std::span<const double> y);

enum class IssueKind { UnknownVideo, FrameOutOfRange, DimensionMismatch, NonFinite, DuplicateKey };

struct ValidationIssue {
    IssueKind kind;
    std::size_t record_index;
    std::string message;
};

const char* to_string(IssueKind kind);

/// Checks every record against the manifest. An empty result means the dataset is consistent.
std::vector<ValidationIssue> validate_manifest(const VideoManifest& manifest,
                                               std::span<const EmbeddingRecord> records);

}  // namespace lecrec
