#include "lecrec/core.hpp"

#include <cmath>
#include <tuple>
#include <unordered_map>

namespace lecrec {

const VideoEntry* VideoManifest::find(const std::string& video_id) const {
    for (const auto& v : videos)
        if (v.video_id == video_id) return &v;
    return nullptr;
}

const VideoEntry& VideoManifest::at(const std::string& video_id) const {
    const auto* v = find(video_id);
    if (!v) throw InvalidInput("unknown video_id '" + video_id + "'");
    return *v;
}

void VideoManifest::check() const {
    if (dimension == 0) throw InvalidInput("manifest dimension must be positive");
    if (!(frame_rate > 0.0)) throw InvalidInput("manifest frame_rate must be positive");
    std::set<std::string> seen;
    for (const auto& v : videos) {
        if (!seen.insert(v.video_id).second)
            throw InvalidInput("duplicate video_id '" + v.video_id + "'");
        if (v.sampled_frame_count == 0)
            throw InvalidInput("video '" + v.video_id + "' has sampled_frame_count 0");
    }
    if (ground_truth) {
        for (const auto& v : videos)
            if (!ground_truth->contains(v.video_id))
                throw InvalidInput("ground_truth misses video '" + v.video_id + "'");
        for (const auto& [id, _] : *ground_truth)
            if (!seen.contains(id)) throw InvalidInput("ground_truth names unknown video '" + id + "'");
    }
}

Assignment::Assignment(std::vector<std::size_t> labels, std::size_t k)
    : labels_(std::move(labels)), k_(k) {
    if (k_ == 0) throw InvalidInput("assignment needs k >= 1");
    std::vector<bool> used(k_, false);
    for (auto l : labels_) {
        if (l >= k_) throw InvalidInput("cluster label out of range");
        used[l] = true;
    }
    for (std::size_t c = 0; c < k_; ++c)
        if (!used[c]) throw InvalidInput("cluster " + std::to_string(c) + " is empty");
}

Assignment Assignment::one_cluster(std::size_t n) {
    if (n == 0) throw InvalidInput("one_cluster of zero points");
    return Assignment(std::vector<std::size_t>(n, 0), 1);
}

Assignment Assignment::from_raw(std::span<const std::size_t> raw) {
    std::unordered_map<std::size_t, std::size_t> remap;
    std::vector<std::size_t> labels;
    labels.reserve(raw.size());
    for (auto r : raw) {
        auto [it, _] = remap.try_emplace(r, remap.size());
        labels.push_back(it->second);
    }
    return Assignment(std::move(labels), remap.size());
}

std::vector<std::vector<std::size_t>> Assignment::members() const {
    std::vector<std::vector<std::size_t>> out(k_);
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
    return out;
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw InvalidInput("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                           std::to_string(y.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
    return std::sqrt(squared_distance(x, y));
}

const char* to_string(IssueKind kind) {
    switch (kind) {
        case IssueKind::UnknownVideo: return "unknown-video";
        case IssueKind::FrameOutOfRange: return "frame-out-of-range";
        case IssueKind::DimensionMismatch: return "dimension-mismatch";
        case IssueKind::NonFinite: return "non-finite";
        case IssueKind::DuplicateKey: return "duplicate-key";
    }
    return "?";
}

std::vector<ValidationIssue> validate_manifest(const VideoManifest& manifest,
                                               std::span<const EmbeddingRecord> records) {
    std::vector<ValidationIssue> issues;
    std::unordered_map<std::string, std::size_t> frames;
    for (const auto& v : manifest.videos) frames.emplace(v.video_id, v.sampled_frame_count);

    std::set<std::tuple<std::string, std::size_t, std::size_t>> keys;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        auto it = frames.find(r.video_id);
        if (it == frames.end()) {
            issues.push_back({IssueKind::UnknownVideo, i, "unknown video_id '" + r.video_id + "'"});
        } else if (r.frame_index >= it->second) {
            issues.push_back({IssueKind::FrameOutOfRange, i,
                              "frame_index " + std::to_string(r.frame_index) + " >= sampled_frame_count " +
                                  std::to_string(it->second)});
        }
        if (r.vector.size() != manifest.dimension) {
            issues.push_back({IssueKind::DimensionMismatch, i,
                              "vector has dimension " + std::to_string(r.vector.size()) + ", expected " +
                                  std::to_string(manifest.dimension)});
        }
        for (double x : r.vector) {
            if (!std::isfinite(x)) {
                issues.push_back({IssueKind::NonFinite, i, "vector has a non-finite component"});
                break;
            }
        }
        if (!keys.emplace(r.video_id, r.frame_index, r.face_index).second) {
            issues.push_back({IssueKind::DuplicateKey, i, "duplicate (video_id, frame_index, face_index)"});
        }
    }
    return issues;
}

}  // namespace lecrec
