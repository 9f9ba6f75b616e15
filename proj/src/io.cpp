#include "lecrec/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lecrec::io {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading " + path.string());
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("error while writing " + path.string());
}

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

Json read_json(const fs::path& path) { return parse_json(read_text(path), path.string()); }

void write_json(const fs::path& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

namespace {

// Field access with format errors reported as ValidationError.
template <typename T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("field '") + key + "': " + e.what());
    }
}

const Json& array_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
        throw ValidationError(std::string("field '") + key + "' must be an array");
    return j.at(key);
}

Json intervals_json(const std::vector<FrameInterval>& intervals) {
    Json out = Json::array();
    for (const auto& iv : intervals) out.push_back(Json::array({iv.start, iv.end}));
    return out;
}

std::vector<FrameInterval> intervals_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("frame intervals must be an array");
    std::vector<FrameInterval> out;
    for (const auto& iv : j) {
        if (!iv.is_array() || iv.size() != 2) throw ValidationError("frame interval must be [start, end]");
        out.push_back({iv[0].get<std::size_t>(), iv[1].get<std::size_t>()});
        if (out.back().end < out.back().start) throw ValidationError("frame interval end precedes start");
    }
    return out;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const char* what) {
    for (const auto& [key, _] : j.items())
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
            throw ValidationError(std::string(what) + ": unknown field '" + key + "'");
}

}  // namespace

Json to_json(const EmbeddingRecord& r) {
    return Json{{"video_id", r.video_id}, {"frame_index", r.frame_index}, {"face_index", r.face_index},
                {"vector", r.vector}};
}

EmbeddingRecord record_from_json(const Json& j) {
    return {field<std::string>(j, "video_id"), field<std::size_t>(j, "frame_index"),
            field<std::size_t>(j, "face_index"), field<Vector>(j, "vector")};
}

std::string format_records(const std::vector<EmbeddingRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += to_json(r).dump();
        out += '\n';
    }
    return out;
}

std::vector<EmbeddingRecord> parse_records(const std::string& text, const std::string& origin) {
    std::vector<EmbeddingRecord> out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = origin + ":" + std::to_string(line_no);
        try {
            out.push_back(record_from_json(parse_json(line, where)));
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return out;
}

std::vector<EmbeddingRecord> read_records(const fs::path& path) {
    return parse_records(read_text(path), path.string());
}

Json to_json(const VideoManifest& m) {
    Json videos = Json::array();
    for (const auto& v : m.videos)
        videos.push_back(Json{{"video_id", v.video_id}, {"sampled_frame_count", v.sampled_frame_count}});
    Json out{{"dataset_id", m.dataset_id}, {"dimension", m.dimension}, {"frame_rate", m.frame_rate},
             {"videos", std::move(videos)}};
    if (m.ground_truth) {
        Json gt = Json::object();
        for (const auto& [vid, entry] : *m.ground_truth) {
            Json e{{"lecturers", entry.lecturers}};
            if (!entry.presence.empty()) {
                Json p = Json::object();
                for (const auto& [label, value] : entry.presence) p[label] = value;
                e["presence"] = std::move(p);
            }
            gt[vid] = std::move(e);
        }
        out["ground_truth"] = std::move(gt);
    }
    return out;
}

VideoManifest manifest_from_json(const Json& j) {
    VideoManifest m;
    m.dataset_id = field<std::string>(j, "dataset_id");
    m.dimension = field<std::size_t>(j, "dimension");
    m.frame_rate = j.contains("frame_rate") ? field<double>(j, "frame_rate") : 1.0;
    for (const auto& v : array_field(j, "videos"))
        m.videos.push_back({field<std::string>(v, "video_id"), field<std::size_t>(v, "sampled_frame_count")});
    if (j.contains("ground_truth") && !j.at("ground_truth").is_null()) {
        const auto& gt = j.at("ground_truth");
        if (!gt.is_object()) throw ValidationError("ground_truth must be an object");
        auto& out = m.ground_truth.emplace();
        for (const auto& [vid, e] : gt.items()) {
            GroundTruthEntry entry;
            entry.lecturers = field<std::set<std::string>>(e, "lecturers");
            if (e.contains("presence")) entry.presence = field<std::map<std::string, double>>(e, "presence");
            out.emplace(vid, std::move(entry));
        }
    }
    try {
        m.check();
    } catch (const InvalidInput& e) {
        throw ValidationError(std::string("manifest: ") + e.what());
    }
    return m;
}

Json to_json(const SyntheticSpec& s) {
    return Json{{"dataset_id", s.dataset_id},
                {"n_lecturers", s.n_lecturers},
                {"n_videos", s.n_videos},
                {"dimension", s.dimension},
                {"lecturers_per_video", {{"min", s.lecturers_per_video.min}, {"max", s.lecturers_per_video.max}}},
                {"frames_per_video", {{"min", s.frames_per_video.min}, {"max", s.frames_per_video.max}}},
                {"presence_fraction", {{"min", s.presence_fraction.min}, {"max", s.presence_fraction.max}}},
                {"blob_std", s.blob_std},
                {"center_separation", s.center_separation},
                {"seed", s.seed}};
}

SyntheticSpec synthetic_spec_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("synthetic spec must be an object");
    reject_unknown(j,
                   {"dataset_id", "n_lecturers", "n_videos", "dimension", "lecturers_per_video", "frames_per_video",
                    "presence_fraction", "blob_std", "center_separation", "seed"},
                   "synthetic spec");
    SyntheticSpec s;
    auto opt = [&](const char* key, auto& target) {
        if (j.contains(key)) target = field<std::decay_t<decltype(target)>>(j, key);
    };
    opt("dataset_id", s.dataset_id);
    opt("n_lecturers", s.n_lecturers);
    opt("n_videos", s.n_videos);
    opt("dimension", s.dimension);
    opt("blob_std", s.blob_std);
    opt("center_separation", s.center_separation);
    opt("seed", s.seed);
    if (j.contains("lecturers_per_video"))
        s.lecturers_per_video = {field<std::size_t>(j["lecturers_per_video"], "min"),
                                 field<std::size_t>(j["lecturers_per_video"], "max")};
    if (j.contains("frames_per_video"))
        s.frames_per_video = {field<std::size_t>(j["frames_per_video"], "min"),
                              field<std::size_t>(j["frames_per_video"], "max")};
    if (j.contains("presence_fraction"))
        s.presence_fraction = {field<double>(j["presence_fraction"], "min"),
                               field<double>(j["presence_fraction"], "max")};
    try {
        s.check();
    } catch (const InvalidInput& e) {
        throw ValidationError(std::string("synthetic spec: ") + e.what());
    }
    return s;
}

Json to_json(const VideoRepresentation& rep) {
    Json clusters = Json::array();
    for (const auto& c : rep.clusters) {
        clusters.push_back(Json{{"cluster_id", c.cluster_id},
                                {"member_count", c.centroid.member_count},
                                {"centroid", c.centroid.vector},
                                {"frames", intervals_json(compress_frames(c.frames))}});
    }
    return Json{{"video_id", rep.video_id},
                {"sampled_frame_count", rep.sampled_frame_count},
                {"silhouette_score", rep.silhouette_score ? Json(*rep.silhouette_score) : Json(nullptr)},
                {"clusters", std::move(clusters)}};
}

VideoRepresentation representation_from_json(const Json& j) {
    VideoRepresentation rep;
    rep.video_id = field<std::string>(j, "video_id");
    rep.sampled_frame_count = field<std::size_t>(j, "sampled_frame_count");
    if (rep.sampled_frame_count == 0) throw ValidationError("sampled_frame_count must be positive");
    if (j.contains("silhouette_score") && !j.at("silhouette_score").is_null())
        rep.silhouette_score = field<double>(j, "silhouette_score");
    for (const auto& c : array_field(j, "clusters")) {
        VideoCluster vc;
        vc.cluster_id = field<std::size_t>(c, "cluster_id");
        vc.centroid = {field<Vector>(c, "centroid"), field<std::size_t>(c, "member_count")};
        vc.frames = expand_intervals(intervals_from_json(c.at("frames")));
        if (!vc.frames.empty() && *vc.frames.rbegin() >= rep.sampled_frame_count)
            throw ValidationError("video '" + rep.video_id + "': frame index beyond sampled_frame_count");
        if (vc.cluster_id != rep.clusters.size())
            throw ValidationError("video '" + rep.video_id + "': cluster ids must run 0..k-1 in order");
        rep.clusters.push_back(std::move(vc));
    }
    return rep;
}

Json to_json(const Timeline& t, double frame_rate) {
    Json tracks = Json::array();
    for (const auto& tr : t.tracks) {
        Json seconds = Json::array();
        for (const auto& iv : tr.intervals)
            seconds.push_back(Json::array({static_cast<double>(iv.start) / frame_rate,
                                           static_cast<double>(iv.end + 1) / frame_rate}));
        tracks.push_back(
            Json{{"cluster_id", tr.cluster_id}, {"intervals", intervals_json(tr.intervals)}, {"seconds", seconds}});
    }
    return Json{{"video_id", t.video_id}, {"frame_rate", frame_rate}, {"tracks", std::move(tracks)}};
}

Json to_json(const IdentityModel& m) {
    Json membership = Json::array();
    for (const auto& [key, l] : m.membership)
        membership.push_back(Json{{"video_id", key.video_id}, {"cluster_id", key.cluster_id}, {"lecturer_id", l}});
    Json presence = Json::array();
    for (const auto& [vid, row] : m.presence)
        for (const auto& [l, p] : row) presence.push_back(Json{{"video_id", vid}, {"lecturer_id", l}, {"p", p}});
    return Json{{"n_identities", m.n_identities},
                {"videos", m.videos},
                {"membership", std::move(membership)},
                {"presence", std::move(presence)}};
}

IdentityModel identity_model_from_json(const Json& j) {
    IdentityModel m;
    m.n_identities = field<std::size_t>(j, "n_identities");
    m.videos = field<std::vector<std::string>>(j, "videos");
    if (!std::is_sorted(m.videos.begin(), m.videos.end()) ||
        std::adjacent_find(m.videos.begin(), m.videos.end()) != m.videos.end())
        throw ValidationError("identity model videos must be unique and ascending");
    for (const auto& e : array_field(j, "membership")) {
        const auto l = field<std::size_t>(e, "lecturer_id");
        if (l >= m.n_identities) throw ValidationError("membership names an unknown lecturer");
        m.membership.emplace(CentroidKey{field<std::string>(e, "video_id"), field<std::size_t>(e, "cluster_id")}, l);
    }
    for (const auto& e : array_field(j, "presence")) {
        const auto vid = field<std::string>(e, "video_id");
        const auto l = field<std::size_t>(e, "lecturer_id");
        const auto p = field<double>(e, "p");
        if (!m.has_video(vid)) throw ValidationError("presence names unknown video '" + vid + "'");
        if (l >= m.n_identities) throw ValidationError("presence names an unknown lecturer");
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("presence value outside [0, 1]");
        m.presence[vid][l] = p;
    }
    for (const auto& v : m.videos) m.presence.try_emplace(v);
    return m;
}

Json rankings_to_json(const std::map<std::string, Ranking>& rankings, double threshold) {
    Json list = Json::array();
    for (const auto& [ref, r] : rankings) {
        Json entries = Json::array();
        for (const auto& e : r.entries)
            entries.push_back(
                Json{{"video_id", e.video_id}, {"score", e.score}, {"shared_lecturers", e.shared_lecturers}});
        list.push_back(Json{{"reference", ref}, {"entries", std::move(entries)}});
    }
    return Json{{"threshold", threshold}, {"rankings", std::move(list)}};
}

std::map<std::string, Ranking> rankings_from_json(const Json& j, double* threshold) {
    if (threshold) *threshold = j.contains("threshold") ? field<double>(j, "threshold") : 0.0;
    std::map<std::string, Ranking> out;
    for (const auto& r : array_field(j, "rankings")) {
        Ranking ranking{field<std::string>(r, "reference"), {}};
        for (const auto& e : array_field(r, "entries"))
            ranking.entries.push_back({field<std::string>(e, "video_id"), field<double>(e, "score"),
                                       field<std::vector<LecturerId>>(e, "shared_lecturers")});
        auto ref = ranking.reference;
        if (!out.emplace(ref, std::move(ranking)).second)
            throw ValidationError("duplicate ranking for '" + ref + "'");
    }
    return out;
}

std::string centroid_id(const CentroidKey& key) { return key.video_id + "#" + std::to_string(key.cluster_id); }

namespace {

// FNV-1a over the serialized centroid, folded into a 24-bit color.
std::string glyph_color(const Vector& v) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : Json(v).dump()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%06llx", static_cast<unsigned long long>((h ^ (h >> 24) ^ (h >> 48)) & 0xffffff));
    return buf;
}

}  // namespace

Json review_bundle(const IdentityModel& model, const std::vector<VideoRepresentation>& reps) {
    std::map<std::string, const VideoRepresentation*> by_video;
    for (const auto& r : reps) by_video.emplace(r.video_id, &r);

    std::vector<Json> groups(model.n_identities);
    for (std::size_t l = 0; l < model.n_identities; ++l)
        groups[l] = Json{{"lecturer_id", l}, {"centroids", Json::array()}};
    for (const auto& [key, l] : model.membership) {
        auto it = by_video.find(key.video_id);
        if (it == by_video.end())
            throw ValidationError("identity model references video '" + key.video_id + "' with no representation");
        const auto& cluster = it->second->cluster(key.cluster_id);
        groups[l]["centroids"].push_back(Json{{"centroid_id", centroid_id(key)},
                                              {"video_id", key.video_id},
                                              {"cluster_id", key.cluster_id},
                                              {"member_count", cluster.centroid.member_count},
                                              {"intervals", intervals_json(compress_frames(cluster.frames))},
                                              {"glyph", glyph_color(cluster.centroid.vector)}});
    }
    Json out{{"format_version", kReviewFormatVersion}, {"groups", Json::array()}};
    for (auto& g : groups) out["groups"].push_back(std::move(g));
    return out;
}

std::set<std::string> bundle_centroid_ids(const Json& bundle) {
    if (field<int>(bundle, "format_version") != kReviewFormatVersion)
        throw ValidationError("unsupported review bundle format_version");
    std::set<std::string> ids;
    for (const auto& g : array_field(bundle, "groups"))
        for (const auto& c : array_field(g, "centroids"))
            if (!ids.insert(field<std::string>(c, "centroid_id")).second)
                throw ValidationError("centroid appears in more than one group");
    return ids;
}

Json to_json(const AnnotationSet& a) {
    Json list = Json::array();
    for (const auto& x : a.annotations)
        list.push_back(Json{{"lecturer_id", x.lecturer_id},
                            {"centroid_id", x.centroid_id},
                            {"flag", x.correct ? "correct" : "wrong"}});
    return Json{{"format_version", kReviewFormatVersion},
                {"participant_id", a.participant_id},
                {"annotations", std::move(list)}};
}

AnnotationSet parse_annotations(const std::string& text, const std::string& origin) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
    const Json j = parse_json(text, origin);
    if (j.contains("format_version") && field<int>(j, "format_version") != kReviewFormatVersion)
        throw ValidationError(origin + ": unsupported annotation format_version");
    AnnotationSet a;
    a.participant_id = field<std::string>(j, "participant_id");
    for (const auto& x : array_field(j, "annotations")) {
        const auto flag = field<std::string>(x, "flag");
        if (flag != "correct" && flag != "wrong")
            throw ValidationError(origin + ": flag must be 'correct' or 'wrong', got '" + flag + "'");
        a.annotations.push_back({field<std::size_t>(x, "lecturer_id"), field<std::string>(x, "centroid_id"),
                                 flag == "correct"});
    }
    return a;
}

Json report_to_json(const EvaluationReport& report) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        rows.push_back(Json{{"threshold", r.threshold},
                            {"MeanR", r.mean_recall},
                            {"MinR", r.min_recall},
                            {"MeanP", r.mean_precision},
                            {"MinP", r.min_precision},
                            {"MeanF1", r.mean_f1},
                            {"MinF1", r.min_f1},
                            {"mAP", r.mean_ap},
                            {"MinAP", r.min_ap},
                            {"min_ap_video", r.min_ap_video},
                            {"evaluated_videos", r.evaluated_videos}});
    }
    return Json{{"rows", std::move(rows)}};
}

}  // namespace lecrec::io
