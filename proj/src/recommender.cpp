#include "lecrec/recommender.hpp"

#include <algorithm>

namespace lecrec {

double IdentityModel::presence_of(LecturerId lecturer, const std::string& video_id) const {
    auto v = presence.find(video_id);
    if (v == presence.end()) return 0.0;
    auto l = v->second.find(lecturer);
    return l == v->second.end() ? 0.0 : l->second;
}

bool IdentityModel::has_video(const std::string& video_id) const {
    return std::binary_search(videos.begin(), videos.end(), video_id);
}

IdentityModel build_identities(std::span<const VideoRepresentation> reps, const BlindClusteringParams& params) {
    std::vector<const VideoRepresentation*> ordered;
    for (const auto& r : reps) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->video_id < b->video_id; });
    for (std::size_t i = 1; i < ordered.size(); ++i)
        if (ordered[i]->video_id == ordered[i - 1]->video_id)
            throw InvalidInput("duplicate representation for video '" + ordered[i]->video_id + "'");

    std::vector<Vector> pooled;
    std::vector<CentroidKey> keys;
    for (const auto* r : ordered) {
        for (const auto& c : r->clusters) {
            pooled.push_back(c.centroid.vector);
            keys.push_back({r->video_id, c.cluster_id});
        }
    }
    if (pooled.empty()) throw InvalidInput("no centroids in the dataset");

    const Assignment identities = blind_clustering(pooled, params);

    IdentityModel model;
    model.n_identities = identities.k();
    for (const auto* r : ordered) model.videos.push_back(r->video_id);
    for (std::size_t i = 0; i < keys.size(); ++i) model.membership.emplace(keys[i], identities[i]);

    for (const auto* r : ordered) {
        std::map<LecturerId, FrameSet> frames;
        for (const auto& c : r->clusters) {
            auto& f = frames[model.membership.at({r->video_id, c.cluster_id})];
            f.insert(c.frames.begin(), c.frames.end());
        }
        auto& row = model.presence[r->video_id];
        for (const auto& [l, f] : frames)
            row[l] = static_cast<double>(f.size()) / static_cast<double>(r->sampled_frame_count);
    }
    return model;
}

IdentityModel apply_presence_threshold(const IdentityModel& model, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw InvalidInput("threshold must lie in [0, 1]");
    IdentityModel out = model;
    for (auto& [_, row] : out.presence)
        for (auto& [__, p] : row)
            if (p < threshold) p = 0.0;
    return out;
}

namespace {

void require_video(const IdentityModel& model, const std::string& v) {
    if (!model.has_video(v)) throw InvalidInput("unknown video '" + v + "'");
}

RankingEntry score_pair(const IdentityModel& model, const std::string& v, const std::string& u) {
    RankingEntry e{u, 0.0, {}};
    auto row = model.presence.find(v);
    if (row == model.presence.end()) return e;
    std::vector<double> terms;
    for (const auto& [l, pv] : row->second) {
        if (pv <= 0.0) continue;
        const double pu = model.presence_of(l, u);
        if (pu <= 0.0) continue;
        terms.push_back(pv * pu);
        e.shared_lecturers.push_back(l);
    }
    // Summing in value order makes the score independent of lecturer numbering.
    std::sort(terms.begin(), terms.end());
    for (double t : terms) e.score += t;
    return e;
}

}  // namespace

double similarity(const IdentityModel& model, const std::string& v, const std::string& u) {
    require_video(model, v);
    require_video(model, u);
    if (v == u) throw InvalidInput("similarity of a video with itself");
    return score_pair(model, v, u).score;
}

void sort_ranking(Ranking& ranking) {
    auto& e = ranking.entries;
    e.erase(std::remove_if(e.begin(), e.end(), [](const RankingEntry& x) { return !(x.score > 0.0); }), e.end());
    std::sort(e.begin(), e.end(), [](const RankingEntry& a, const RankingEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.video_id < b.video_id;
    });
}

Ranking rank(const IdentityModel& model, const std::string& v) {
    require_video(model, v);
    Ranking r{v, {}};
    for (const auto& u : model.videos) {
        if (u == v) continue;
        r.entries.push_back(score_pair(model, v, u));
    }
    sort_ranking(r);
    return r;
}

std::map<std::string, Ranking> recommend_all(const IdentityModel& model) {
    std::map<std::string, Ranking> out;
    for (const auto& v : model.videos) out.emplace(v, rank(model, v));
    return out;
}

}  // namespace lecrec
