#include "lecrec/video.hpp"

namespace lecrec {

const VideoCluster& VideoRepresentation::cluster(std::size_t cluster_id) const {
    for (const auto& c : clusters)
        if (c.cluster_id == cluster_id) return c;
    throw InvalidInput("video '" + video_id + "' has no cluster " + std::to_string(cluster_id));
}

VideoRepresentation represent_video(std::span<const EmbeddingRecord> records, const std::string& video_id,
                                    const VideoManifest& manifest, const BlindClusteringParams& params) {
    const auto* entry = manifest.find(video_id);
    if (!entry) throw ValidationError("video '" + video_id + "' is not in the manifest");
    for (const auto& r : records)
        if (r.video_id != video_id)
            throw ValidationError("record of video '" + r.video_id + "' passed for '" + video_id + "'");
    if (auto issues = validate_manifest(manifest, records); !issues.empty())
        throw ValidationError("video '" + video_id + "': record " + std::to_string(issues.front().record_index) +
                              ": " + issues.front().message);

    VideoRepresentation rep{video_id, entry->sampled_frame_count, {}, std::nullopt};
    if (records.empty()) return rep;

    std::vector<Vector> data;
    data.reserve(records.size());
    for (const auto& r : records) data.push_back(r.vector);

    auto result = blind_clustering_detailed(data, params);
    auto cs = centroids(data, result.assignment);
    rep.silhouette_score = result.silhouette;
    rep.clusters.reserve(cs.size());
    for (std::size_t c = 0; c < cs.size(); ++c) rep.clusters.push_back({c, std::move(cs[c]), {}});
    for (std::size_t i = 0; i < records.size(); ++i)
        rep.clusters[result.assignment[i]].frames.insert(records[i].frame_index);
    return rep;
}

double presence_fraction(const VideoRepresentation& rep, std::size_t cluster_id) {
    return static_cast<double>(rep.cluster(cluster_id).frames.size()) /
           static_cast<double>(rep.sampled_frame_count);
}

std::vector<FrameInterval> compress_frames(const FrameSet& frames) {
    std::vector<FrameInterval> out;
    for (auto f : frames) {
        if (!out.empty() && out.back().end + 1 == f)
            out.back().end = f;
        else
            out.push_back({f, f});
    }
    return out;
}

FrameSet expand_intervals(std::span<const FrameInterval> intervals) {
    FrameSet out;
    for (const auto& iv : intervals) {
        if (iv.end < iv.start) throw InvalidInput("interval end precedes start");
        for (auto f = iv.start; f <= iv.end; ++f) out.insert(f);
    }
    return out;
}

Timeline build_timeline(const VideoRepresentation& rep) {
    Timeline t{rep.video_id, {}};
    for (const auto& c : rep.clusters) t.tracks.push_back({c.cluster_id, compress_frames(c.frames)});
    return t;
}

}  // namespace lecrec
