#include <doctest.h>

#include <cmath>

#include "lecrec/core.hpp"
#include "lecrec/synthetic.hpp"

using namespace lecrec;

TEST_CASE("euclidean distance examples") {
    CHECK(euclidean_distance(Vector{0, 0}, Vector{3, 4}) == 5.0);
    CHECK(euclidean_distance(Vector{7, -2}, Vector{7, -2}) == 0.0);
    CHECK(euclidean_distance(Vector{1, 1, 1}, Vector{2, 2, 2}) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(euclidean_distance(Vector{1, 2}, Vector{1, 2, 3}), InvalidInput);
}

TEST_CASE("euclidean distance is a metric on random triples") {
    SeededRandom rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto dim = rng.uniform_int(1, 8);
        Vector x(dim), y(dim), z(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            x[d] = rng.uniform(-50, 50);
            y[d] = rng.uniform(-50, 50);
            z[d] = rng.uniform(-50, 50);
        }
        const double xy = euclidean_distance(x, y), yz = euclidean_distance(y, z), xz = euclidean_distance(x, z);
        CHECK(xz <= xy + yz + 1e-9);
        CHECK(xy == euclidean_distance(y, x));
        CHECK(xy > 0.0);
    }
}

TEST_CASE("assignment rejects empty clusters and bad labels") {
    CHECK_NOTHROW(Assignment({0, 1, 1, 0}, 2));
    CHECK_THROWS_AS(Assignment({0, 0, 2}, 3), InvalidInput);
    CHECK_THROWS_AS(Assignment({0, 3}, 2), InvalidInput);
    CHECK_THROWS_AS(Assignment({}, 0), InvalidInput);

    const std::vector<std::size_t> raw{7, 7, 3, 9, 3};
    const auto a = Assignment::from_raw(raw);
    CHECK(a.k() == 3);
    CHECK(a.labels() == std::vector<std::size_t>{0, 0, 1, 2, 1});
    CHECK(a.members() == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 4}, {3}});
}

namespace {

VideoManifest small_manifest() {
    VideoManifest m;
    m.dataset_id = "t";
    m.dimension = 2;
    m.videos = {{"a", 10}, {"b", 5}};
    return m;
}

}  // namespace

TEST_CASE("validate_manifest") {
    const auto m = small_manifest();
    std::vector<EmbeddingRecord> records{{"a", 0, 0, {1, 2}}, {"a", 9, 0, {1, 2}}, {"b", 4, 1, {0, 0}}};
    CHECK(validate_manifest(m, records).empty());

    SUBCASE("dimension D+1") {
        records.push_back({"b", 1, 0, {1, 2, 3}});
        const auto issues = validate_manifest(m, records);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].kind == IssueKind::DimensionMismatch);
        CHECK(issues[0].record_index == 3);
    }
    SUBCASE("unknown video") {
        records.push_back({"ghost", 0, 0, {1, 2}});
        const auto issues = validate_manifest(m, records);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].kind == IssueKind::UnknownVideo);
    }
    SUBCASE("frame index past the end") {
        records.push_back({"b", 5, 0, {1, 2}});
        const auto issues = validate_manifest(m, records);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].kind == IssueKind::FrameOutOfRange);
    }
    SUBCASE("duplicate key and non-finite") {
        records.push_back({"a", 0, 0, {3, 3}});
        records.push_back({"a", 1, 0, {NAN, 3}});
        const auto issues = validate_manifest(m, records);
        REQUIRE(issues.size() == 2);
        CHECK(issues[0].kind == IssueKind::DuplicateKey);
        CHECK(issues[1].kind == IssueKind::NonFinite);
    }
}

TEST_CASE("manifest check") {
    auto m = small_manifest();
    CHECK_NOTHROW(m.check());
    m.videos.push_back({"a", 3});
    CHECK_THROWS_AS(m.check(), InvalidInput);
    m = small_manifest();
    m.videos[1].sampled_frame_count = 0;
    CHECK_THROWS_AS(m.check(), InvalidInput);
    m = small_manifest();
    m.ground_truth.emplace();
    (*m.ground_truth)["a"] = {{"L1"}, {}};
    CHECK_THROWS_AS(m.check(), InvalidInput);
    (*m.ground_truth)["b"] = {{"L2"}, {}};
    CHECK_NOTHROW(m.check());
}
