#pragma once

// Ranking metrics, the presence-threshold sweep report and annotation precision.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lecrec/core.hpp"
#include "lecrec/recommender.hpp"

namespace lecrec {

using GroundTruth = std::map<std::string, GroundTruthEntry>;

/// AP over an ordered relevance list: mean of P@k taken at relevant
/// positions, divided by the number of relevant entries in the list.
/// An all-zero or empty list scores 0.
double average_precision(std::span<const int> relevancies);

struct PrfScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Empty ranking -> precision 0; empty relevant set -> recall 1; P + R = 0 -> F1 0.
PrfScores precision_recall_f1(const Ranking& ranking, const std::set<std::string>& relevant);

/// For each video, the other videos sharing at least one ground-truth lecturer.
std::map<std::string, std::set<std::string>> relevant_sets(const GroundTruth& ground_truth);

std::vector<int> relevancies(const Ranking& ranking, const std::set<std::string>& relevant);

struct ReportRow {
    double threshold = 0.0;
    double mean_recall = 0.0, min_recall = 0.0;
    double mean_precision = 0.0, min_precision = 0.0;
    double mean_f1 = 0.0, min_f1 = 0.0;
    double mean_ap = 0.0, min_ap = 0.0;
    std::string min_ap_video;
    std::size_t evaluated_videos = 0;
};

struct EvaluationReport {
    std::vector<ReportRow> rows;
};

/// Aggregates per-video P/R/F1/AP. Videos with no relevant partner are skipped.
ReportRow evaluate_rankings(const std::map<std::string, Ranking>& rankings, const GroundTruth& ground_truth,
                            double threshold);

/// 0%, 1%, ..., 25%.
std::vector<double> default_thresholds();

/// Inclusive sweep from `from` to `to` in `step` increments, computed as from + i * step.
std::vector<double> threshold_range(double from, double to, double step);

EvaluationReport threshold_sweep(const IdentityModel& model, const GroundTruth& ground_truth,
                                 std::span<const double> thresholds);

/// Comma-separated table: Threshold,MeanR,MinR,MeanP,MinP,MeanF1,MinF1,mAP,MinAP.
std::string format_report_csv(const EvaluationReport& report);

struct Annotation {
    LecturerId lecturer_id = 0;
    std::string centroid_id;
    bool correct = true;

    bool operator==(const Annotation&) const = default;
};

struct AnnotationSet {
    std::string participant_id;
    std::vector<Annotation> annotations;

    bool operator==(const AnnotationSet&) const = default;
};

struct ParticipantPrecision {
    std::string participant_id;
    std::size_t correct = 0;
    std::size_t wrong = 0;
    double precision = 0.0;  // fraction, 0 when nothing was annotated
};

struct AnnotationPrecisionTable {
    std::vector<ParticipantPrecision> participants;
    double average_correct = 0.0;
    double average_wrong = 0.0;
    double average_precision = 0.0;  // mean of per-participant precisions
};

/// Per-participant correct / (correct + wrong). When known_centroids is
/// given, any annotation naming another centroid raises ValidationError.
AnnotationPrecisionTable annotation_precision(std::span<const AnnotationSet> annotations,
                                              const std::set<std::string>* known_centroids = nullptr);

std::string format_annotation_table(const AnnotationPrecisionTable& table);

}  // namespace lecrec
