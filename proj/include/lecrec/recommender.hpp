#pragma once

// Cross-video phase: centroid clustering into lecturer identities, presence
// matrix, pairwise similarity and ranking.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lecrec/clustering.hpp"
#include "lecrec/video.hpp"

namespace lecrec {

using LecturerId = std::size_t;

struct CentroidKey {
    std::string video_id;
    std::size_t cluster_id;

    auto operator<=>(const CentroidKey&) const = default;
};

struct IdentityModel {
    std::size_t n_identities = 0;
    /// Every video of the dataset, ascending, including videos with no faces.
    std::vector<std::string> videos;
    std::map<CentroidKey, LecturerId> membership;
    /// video -> lecturer -> presence fraction. Missing entries read as 0.
    std::map<std::string, std::map<LecturerId, double>> presence;

    double presence_of(LecturerId lecturer, const std::string& video_id) const;
    bool has_video(const std::string& video_id) const;

    bool operator==(const IdentityModel&) const = default;
};

struct RankingEntry {
    std::string video_id;
    double score;
    std::vector<LecturerId> shared_lecturers;

    bool operator==(const RankingEntry&) const = default;
};

/// Recommendations for one reference video: positive scores only, descending,
/// ties by ascending video id.
struct Ranking {
    std::string reference;
    std::vector<RankingEntry> entries;

    bool operator==(const Ranking&) const = default;
};

IdentityModel build_identities(std::span<const VideoRepresentation> reps, const BlindClusteringParams& params);

/// Zeroes every presence value strictly below threshold.
IdentityModel apply_presence_threshold(const IdentityModel& model, double threshold);

/// Sum over the lecturers present in v of p(l, v) * p(l, u).
double similarity(const IdentityModel& model, const std::string& v, const std::string& u);

Ranking rank(const IdentityModel& model, const std::string& v);

std::map<std::string, Ranking> recommend_all(const IdentityModel& model);

/// Orders entries by descending score then ascending video id, dropping non-positive scores.
void sort_ranking(Ranking& ranking);

}  // namespace lecrec
