#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lecrec/evaluation.hpp"
#include "lecrec/synthetic.hpp"

using namespace lecrec;

namespace {

// AP written out from the definition, P@k recounted from scratch at every position.
double brute_ap(const std::vector<int>& alpha) {
    std::size_t gtp = 0;
    for (int a : alpha) gtp += a;
    if (gtp == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t k = 1; k <= alpha.size(); ++k) {
        std::size_t top = 0;
        for (std::size_t i = 0; i < k; ++i) top += alpha[i];
        sum += static_cast<double>(top) / static_cast<double>(k) * alpha[k - 1];
    }
    return sum / static_cast<double>(gtp);
}

bool is_prefix(const std::vector<int>& alpha) {
    bool seen_zero = false;
    for (int a : alpha) {
        if (a == 0) seen_zero = true;
        else if (seen_zero) return false;
    }
    return true;
}

AnnotationSet participant(const std::string& id, std::size_t correct, std::size_t wrong) {
    AnnotationSet s{id, {}};
    for (std::size_t i = 0; i < correct + wrong; ++i)
        s.annotations.push_back({i % 7, "v" + std::to_string(i) + "#0", i < correct});
    return s;
}

Ranking ranking_of(const std::string& ref, std::vector<std::string> ids) {
    Ranking r{ref, {}};
    double s = 1.0;
    for (auto& id : ids) r.entries.push_back({std::move(id), s /= 2, {}});
    return r;
}

}  // namespace

TEST_CASE("average precision examples") {
    const std::vector<int> a{1, 0, 1, 1};
    CHECK(average_precision(a) == doctest::Approx((1.0 + 2.0 / 3 + 3.0 / 4) / 3));
    CHECK(average_precision(a) == doctest::Approx(0.805556).epsilon(1e-6));
    CHECK(average_precision(std::vector<int>{1, 1, 1}) == 1.0);
    CHECK(average_precision(std::vector<int>{0, 0}) == 0.0);
    CHECK(average_precision(std::vector<int>{}) == 0.0);
    CHECK(average_precision(std::vector<int>{0, 1}) == 0.5);
    CHECK_THROWS_AS(average_precision(std::vector<int>{1, 2}), InvalidInput);
    CHECK_THROWS_AS(average_precision(std::vector<int>{-1}), InvalidInput);
}

TEST_CASE("average precision matches the definition on every list up to length 8") {
    for (std::size_t len = 0; len <= 8; ++len) {
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
            std::vector<int> alpha(len);
            for (std::size_t i = 0; i < len; ++i) alpha[i] = (mask >> i) & 1u;
            const double ap = average_precision(alpha);
            CHECK(std::abs(ap - brute_ap(alpha)) <= 1e-12);
            CHECK(ap >= 0.0);
            CHECK(ap <= 1.0);
            if (mask != 0) CHECK((ap == 1.0) == is_prefix(alpha));
        }
    }
}

TEST_CASE("average precision on random long lists and adjacent swaps") {
    SeededRandom rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<int> alpha(rng.uniform_int(9, 60));
        for (auto& a : alpha) a = rng.uniform() < 0.4 ? 1 : 0;
        const double ap = average_precision(alpha);
        CHECK(std::abs(ap - brute_ap(alpha)) <= 1e-12);

        // Moving a relevant item one place up never lowers AP.
        for (std::size_t i = 0; i + 1 < alpha.size(); ++i) {
            if (alpha[i] == 0 && alpha[i + 1] == 1) {
                auto swapped = alpha;
                std::swap(swapped[i], swapped[i + 1]);
                CHECK(average_precision(swapped) > ap);
            }
        }
    }
}

TEST_CASE("precision, recall and F1") {
    const auto r = ranking_of("A", {"B", "C"});
    const auto s = precision_recall_f1(r, {"B", "C", "D"});
    CHECK(s.precision == 1.0);
    CHECK(s.recall == doctest::Approx(2.0 / 3));
    CHECK(s.f1 == doctest::Approx(0.8));

    const auto empty = precision_recall_f1(Ranking{"A", {}}, {"B"});
    CHECK(empty.precision == 0.0);
    CHECK(empty.recall == 0.0);
    CHECK(empty.f1 == 0.0);

    const auto none_relevant = precision_recall_f1(r, {});
    CHECK(none_relevant.recall == 1.0);
    CHECK(none_relevant.precision == 0.0);
    CHECK(none_relevant.f1 == 0.0);
}

TEST_CASE("F1 never exceeds the arithmetic mean of P and R") {
    SeededRandom rng(18);
    const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f", "g", "h"};
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::string> ids;
        std::set<std::string> rel;
        for (const auto& p : pool) {
            if (rng.uniform() < 0.5) ids.push_back(p);
            if (rng.uniform() < 0.5) rel.insert(p);
        }
        const auto s = precision_recall_f1(ranking_of("z", ids), rel);
        CHECK(s.f1 <= (s.precision + s.recall) / 2 + 1e-15);
        CHECK(s.f1 >= 0.0);
    }
}

TEST_CASE("relevant sets and relevance lists") {
    GroundTruth gt{{"a", {{"L0"}, {{"L0", 0.5}}}},
                   {"b", {{"L0", "L1"}, {{"L0", 0.2}, {"L1", 0.3}}}},
                   {"c", {{"L1"}, {{"L1", 0.4}}}},
                   {"d", {{"L2"}, {{"L2", 0.1}}}}};
    const auto rel = relevant_sets(gt);
    CHECK(rel.at("a") == std::set<std::string>{"b"});
    CHECK(rel.at("b") == std::set<std::string>{"a", "c"});
    CHECK(rel.at("c") == std::set<std::string>{"b"});
    CHECK(rel.at("d").empty());
    CHECK(relevancies(ranking_of("b", {"c", "d", "a"}), rel.at("b")) == std::vector<int>{1, 0, 1});
}

TEST_CASE("videos without relevant partners are left out of the aggregates") {
    GroundTruth gt{{"a", {{"L0"}, {{"L0", 0.5}}}},
                   {"b", {{"L0"}, {{"L0", 0.2}}}},
                   {"lonely", {{"L9"}, {{"L9", 0.9}}}}};
    std::map<std::string, Ranking> rankings{{"a", ranking_of("a", {"b"})},
                                            {"b", ranking_of("b", {"lonely", "a"})},
                                            {"lonely", ranking_of("lonely", {"a"})}};
    const auto row = evaluate_rankings(rankings, gt, 0.03);
    CHECK(row.evaluated_videos == 2);
    CHECK(row.threshold == 0.03);
    CHECK(row.mean_recall == 1.0);
    CHECK(row.min_precision == 0.5);
    CHECK(row.mean_precision == 0.75);
    CHECK(row.min_ap == 0.5);
    CHECK(row.min_ap_video == "b");
    CHECK(row.mean_ap == 0.75);
}

TEST_CASE("missing ranking counts as an empty one") {
    GroundTruth gt{{"a", {{"L0"}, {{"L0", 0.5}}}}, {"b", {{"L0"}, {{"L0", 0.2}}}}};
    const auto row = evaluate_rankings({{"a", ranking_of("a", {"b"})}}, gt, 0.0);
    CHECK(row.evaluated_videos == 2);
    CHECK(row.min_recall == 0.0);
    CHECK(row.mean_recall == 0.5);
    CHECK(row.min_ap_video == "b");
}

TEST_CASE("threshold sweep on a perfect dataset") {
    GroundTruth gt;
    IdentityModel model;
    model.n_identities = 3;
    const std::vector<std::tuple<std::string, std::string, LecturerId, double>> rows{
        {"v0", "L0", 0, 0.5}, {"v1", "L0", 0, 0.3}, {"v2", "L1", 1, 0.4},
        {"v3", "L1", 1, 0.6}, {"v4", "L2", 2, 0.3}, {"v5", "L2", 2, 0.9}};
    for (const auto& [v, label, l, p] : rows) {
        gt[v] = {{label}, {{label, p}}};
        model.videos.push_back(v);
        model.presence[v][l] = p;
    }
    const auto thresholds = default_thresholds();
    REQUIRE(thresholds.size() == 26);
    CHECK(thresholds[1] == 0.01);
    CHECK(thresholds.back() == 0.25);
    const auto report = threshold_sweep(model, gt, thresholds);
    REQUIRE(report.rows.size() == 26);
    for (const auto& r : report.rows) {
        CHECK(r.evaluated_videos == 6);
        for (double x : {r.mean_recall, r.min_recall, r.mean_precision, r.min_precision, r.mean_f1, r.min_f1,
                         r.mean_ap, r.min_ap})
            CHECK(x == 1.0);
    }

    const auto csv = format_report_csv(report);
    CHECK(csv.starts_with("Threshold,MeanR,MinR,MeanP,MinP,MeanF1,MinF1,mAP,MinAP\n"
                          "0%,1.00000,1.00000,1.00000,1.00000,1.00000,1.00000,1.00000,1.00000\n"
                          "1%,"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 27);
    CHECK(csv.find("\n25%,") != std::string::npos);

    // Past 30% the weaker presences vanish and recall drops.
    const std::vector<double> high{0.31};
    CHECK(threshold_sweep(model, gt, high).rows[0].min_recall == 0.0);
}

TEST_CASE("threshold sweep input checks") {
    IdentityModel model;
    model.videos = {"a"};
    GroundTruth gt{{"a", {{"L0"}, {{"L0", 1.0}}}}};
    const std::vector<double> unordered{0.1, 0.05};
    CHECK_THROWS_AS(threshold_sweep(model, gt, unordered), InvalidInput);
    model.videos = {"a", "b"};
    const std::vector<double> ok{0.0};
    CHECK_THROWS_AS(threshold_sweep(model, gt, ok), InvalidInput);
}

TEST_CASE("threshold range") {
    const auto r = threshold_range(0.0, 0.25, 0.01);
    CHECK(r.size() == 26);
    CHECK(r.back() == doctest::Approx(0.25));
    CHECK(threshold_range(0.1, 0.1, 0.05).size() == 1);
    CHECK_THROWS_AS(threshold_range(0.0, 0.2, 0.0), InvalidInput);
    CHECK_THROWS_AS(threshold_range(0.3, 0.2, 0.1), InvalidInput);
}

TEST_CASE("annotation precision table") {
    const std::vector<AnnotationSet> sets{participant("P1", 163, 62), participant("P2", 160, 65),
                                          participant("P3", 164, 61), participant("P4", 164, 61),
                                          participant("P5", 162, 63)};
    const auto table = annotation_precision(sets);
    REQUIRE(table.participants.size() == 5);
    const double expected[] = {72.44, 71.11, 72.89, 72.89, 72.00};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::abs(100.0 * table.participants[i].precision - expected[i]) < 0.005);
    CHECK(std::abs(100.0 * table.average_precision - 72.266) < 0.005);
    CHECK(table.average_correct == doctest::Approx(162.6));
    CHECK(table.average_wrong == doctest::Approx(62.4));

    const auto text = format_annotation_table(table);
    CHECK(text.starts_with("Participant,#Correct,#Wrong,Precision\nP1,163,62,72.44%\n"));
    CHECK(text.find("Avg,162.6,62.4,72.267%") != std::string::npos);
}

TEST_CASE("annotation precision edge cases") {
    const std::vector<AnnotationSet> all_right{participant("P", 10, 0)};
    CHECK(annotation_precision(all_right).participants[0].precision == 1.0);

    const std::vector<AnnotationSet> nothing{{"idle", {}}};
    CHECK(annotation_precision(nothing).participants[0].precision == 0.0);

    const std::set<std::string> known{"v0#0"};
    const std::vector<AnnotationSet> stray{{"P", {{0, "v0#0", true}, {0, "ghost#3", false}}}};
    CHECK_THROWS_AS(annotation_precision(stray, &known), ValidationError);
    const std::vector<AnnotationSet> fine{{"P", {{0, "v0#0", true}}}};
    CHECK(annotation_precision(fine, &known).participants[0].correct == 1);
}
