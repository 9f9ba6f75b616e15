#include <doctest.h>

#include "lecrec/synthetic.hpp"
#include "lecrec/video.hpp"

using namespace lecrec;

namespace {

VideoManifest manifest_for(const std::string& id, std::size_t frames, std::size_t dim) {
    VideoManifest m;
    m.dataset_id = "t";
    m.dimension = dim;
    m.videos = {{id, frames}};
    return m;
}

VideoRepresentation rep_with_frames(FrameSet frames, std::size_t total) {
    return {"v", total, {{0, {{0.0}, frames.size()}, std::move(frames)}}, std::nullopt};
}

}  // namespace

TEST_CASE("one lecturer over twenty frames") {
    SeededRandom rng(1);
    const std::vector<Vector> center{Vector(16, 0.0)};
    auto [points, _] = make_blobs(center, 20, 1.0, rng);
    std::vector<EmbeddingRecord> records;
    for (std::size_t f = 0; f < 20; ++f) records.push_back({"v", f, 0, points[f]});

    const auto rep = represent_video(records, "v", manifest_for("v", 20, 16), {});
    REQUIRE(rep.clusters.size() == 1);
    CHECK(rep.clusters[0].frames.size() == 20);
    CHECK(*rep.clusters[0].frames.begin() == 0);
    CHECK(*rep.clusters[0].frames.rbegin() == 19);
    CHECK_FALSE(rep.silhouette_score.has_value());
    CHECK(presence_fraction(rep, 0) == 1.0);
}

TEST_CASE("two alternating lecturers") {
    SeededRandom rng(2);
    const auto centers = draw_centers(2, 8, 10.0, rng);
    std::vector<EmbeddingRecord> records;
    for (std::size_t f = 0; f < 30; ++f) {
        Vector x = centers[f % 2];
        for (auto& c : x) c += rng.normal();
        records.push_back({"v", f, 0, x});
    }
    const auto rep = represent_video(records, "v", manifest_for("v", 30, 8), {});
    REQUIRE(rep.clusters.size() == 2);
    // cluster 0 holds record 0, i.e. the even frames
    for (auto f : rep.clusters[0].frames) CHECK(f % 2 == 0);
    for (auto f : rep.clusters[1].frames) CHECK(f % 2 == 1);
    CHECK(rep.clusters[0].frames.size() == 15);
    CHECK(rep.clusters[1].frames.size() == 15);
    REQUIRE(rep.silhouette_score.has_value());
    CHECK(*rep.silhouette_score > 0.2);
}

TEST_CASE("video without faces") {
    const auto rep = represent_video({}, "v", manifest_for("v", 40, 4), {});
    CHECK(rep.clusters.empty());
    CHECK(rep.sampled_frame_count == 40);
    CHECK(build_timeline(rep).tracks.empty());
}

TEST_CASE("represent_video validation") {
    const auto m = manifest_for("v", 5, 2);
    std::vector<EmbeddingRecord> foreign{{"w", 0, 0, {1, 1}}};
    CHECK_THROWS_AS(represent_video(foreign, "v", m, {}), ValidationError);
    CHECK_THROWS_AS(represent_video({}, "w", m, {}), ValidationError);
    std::vector<EmbeddingRecord> late{{"v", 5, 0, {1, 1}}};
    CHECK_THROWS_AS(represent_video(late, "v", m, {}), ValidationError);
}

TEST_CASE("presence fraction") {
    FrameSet half;
    for (std::size_t f = 0; f < 100; f += 2) half.insert(f);
    CHECK(presence_fraction(rep_with_frames(half, 100), 0) == 0.5);
    CHECK_THROWS_AS(presence_fraction(rep_with_frames(half, 100), 1), InvalidInput);
}

TEST_CASE("two faces in one frame count once") {
    // Lecturer seen in frames 1, 3, 3 (two detections), 7, 8 -> 4 distinct of 10.
    // Identical embeddings score 0 at every k, so they stay one cluster.
    std::vector<EmbeddingRecord> records{{"v", 1, 0, {1, 1}}, {"v", 3, 0, {1, 1}}, {"v", 3, 1, {1, 1}},
                                         {"v", 7, 0, {1, 1}}, {"v", 8, 0, {1, 1}}};
    const auto rep = represent_video(records, "v", manifest_for("v", 10, 2), {});
    REQUIRE(rep.clusters.size() == 1);
    CHECK(rep.clusters[0].centroid.member_count == 5);
    CHECK(presence_fraction(rep, 0) == 0.4);
}

TEST_CASE("timeline compression") {
    CHECK(compress_frames({0, 1, 2, 5, 6}) == std::vector<FrameInterval>{{0, 2}, {5, 6}});
    CHECK(compress_frames({}).empty());
    CHECK(compress_frames({3}) == std::vector<FrameInterval>{{3, 3}});

    const auto t = build_timeline(rep_with_frames({0, 1, 2, 5, 6}, 10));
    REQUIRE(t.tracks.size() == 1);
    CHECK(t.tracks[0].cluster_id == 0);
    CHECK(t.tracks[0].intervals.size() == 2);
}

TEST_CASE("timeline round-trips random frame sets") {
    SeededRandom rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        FrameSet frames;
        const auto n = rng.uniform_int(0, 60);
        for (std::size_t i = 0; i < n; ++i) frames.insert(rng.uniform_int(0, 80));
        const auto intervals = compress_frames(frames);
        CHECK(expand_intervals(intervals) == frames);
        for (std::size_t i = 1; i < intervals.size(); ++i) CHECK(intervals[i - 1].end + 1 < intervals[i].start);
    }
}

TEST_CASE("frame sets are exactly the frames of member records") {
    SyntheticSpec spec;
    spec.n_lecturers = 5;
    spec.n_videos = 6;
    spec.dimension = 16;
    spec.frames_per_video = {20, 60};
    spec.lecturers_per_video = {1, 3};
    spec.presence_fraction = {0.2, 0.7};
    spec.seed = 12;
    const auto ds = generate(spec);

    for (const auto& v : ds.manifest.videos) {
        std::vector<EmbeddingRecord> records;
        for (const auto& r : ds.records)
            if (r.video_id == v.video_id) records.push_back(r);
        const auto rep = represent_video(records, v.video_id, ds.manifest, {});

        std::vector<Vector> data;
        for (const auto& r : records) data.push_back(r.vector);
        const auto assignment = blind_clustering(data, {});
        REQUIRE(rep.clusters.size() == assignment.k());

        FrameSet any_face;
        std::size_t total = 0;
        const auto members = assignment.members();
        for (std::size_t c = 0; c < assignment.k(); ++c) {
            FrameSet expected;
            for (auto i : members[c]) expected.insert(records[i].frame_index);
            CHECK(rep.clusters[c].frames == expected);
            CHECK(rep.clusters[c].cluster_id == c);
            total += expected.size();
            any_face.insert(expected.begin(), expected.end());
        }
        CHECK(total >= any_face.size());
        for (const auto& c : rep.clusters) {
            const double p = presence_fraction(rep, c.cluster_id);
            CHECK(p > 0.0);
            CHECK(p <= 1.0);
        }
    }
}
