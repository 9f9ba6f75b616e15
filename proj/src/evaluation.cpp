#include "lecrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace lecrec {

double average_precision(std::span<const int> relevancies) {
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < relevancies.size(); ++k) {
        const int a = relevancies[k];
        if (a != 0 && a != 1) throw InvalidInput("relevance values must be 0 or 1");
        if (a == 1) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(k + 1);
        }
    }
    return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

PrfScores precision_recall_f1(const Ranking& ranking, const std::set<std::string>& relevant) {
    std::size_t hits = 0;
    for (const auto& e : ranking.entries)
        if (relevant.contains(e.video_id)) ++hits;
    PrfScores s;
    s.precision = ranking.entries.empty() ? 0.0
                                          : static_cast<double>(hits) / static_cast<double>(ranking.entries.size());
    s.recall = relevant.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(relevant.size());
    const double denom = s.precision + s.recall;
    s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
    return s;
}

std::map<std::string, std::set<std::string>> relevant_sets(const GroundTruth& ground_truth) {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [v, gv] : ground_truth) {
        auto& rel = out[v];
        for (const auto& [u, gu] : ground_truth) {
            if (u == v) continue;
            const bool shared = std::any_of(gv.lecturers.begin(), gv.lecturers.end(),
                                            [&](const std::string& l) { return gu.lecturers.contains(l); });
            if (shared) rel.insert(u);
        }
    }
    return out;
}

std::vector<int> relevancies(const Ranking& ranking, const std::set<std::string>& relevant) {
    std::vector<int> out;
    out.reserve(ranking.entries.size());
    for (const auto& e : ranking.entries) out.push_back(relevant.contains(e.video_id) ? 1 : 0);
    return out;
}

ReportRow evaluate_rankings(const std::map<std::string, Ranking>& rankings, const GroundTruth& ground_truth,
                            double threshold) {
    const auto relevant = relevant_sets(ground_truth);
    ReportRow row;
    row.threshold = threshold;
    constexpr double inf = std::numeric_limits<double>::infinity();
    row.min_recall = row.min_precision = row.min_f1 = row.min_ap = inf;

    const Ranking empty;
    for (const auto& [v, rel] : relevant) {
        if (rel.empty()) continue;
        auto it = rankings.find(v);
        const Ranking& r = it == rankings.end() ? empty : it->second;
        const auto prf = precision_recall_f1(r, rel);
        const auto alphas = relevancies(r, rel);
        const double ap = average_precision(alphas);

        row.mean_recall += prf.recall;
        row.mean_precision += prf.precision;
        row.mean_f1 += prf.f1;
        row.mean_ap += ap;
        row.min_recall = std::min(row.min_recall, prf.recall);
        row.min_precision = std::min(row.min_precision, prf.precision);
        row.min_f1 = std::min(row.min_f1, prf.f1);
        if (ap < row.min_ap) {
            row.min_ap = ap;
            row.min_ap_video = v;
        }
        ++row.evaluated_videos;
    }
    if (row.evaluated_videos == 0) {
        row.min_recall = row.min_precision = row.min_f1 = row.min_ap = 0.0;
        return row;
    }
    const auto n = static_cast<double>(row.evaluated_videos);
    row.mean_recall /= n;
    row.mean_precision /= n;
    row.mean_f1 /= n;
    row.mean_ap /= n;
    return row;
}

std::vector<double> threshold_range(double from, double to, double step) {
    if (!(step > 0.0)) throw InvalidInput("threshold step must be positive");
    if (!(from >= 0.0 && to <= 1.0 && from <= to)) throw InvalidInput("threshold range must lie within [0, 1]");
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) out.push_back(std::min(1.0, from + static_cast<double>(i) * step));
    return out;
}

std::vector<double> default_thresholds() {
    std::vector<double> out;
    for (int i = 0; i <= 25; ++i) out.push_back(i / 100.0);
    return out;
}

EvaluationReport threshold_sweep(const IdentityModel& model, const GroundTruth& ground_truth,
                                 std::span<const double> thresholds) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i] > thresholds[i - 1])) throw InvalidInput("thresholds must be strictly increasing");
    for (const auto& v : model.videos)
        if (!ground_truth.contains(v)) throw InvalidInput("ground truth misses video '" + v + "'");

    EvaluationReport report;
    for (double t : thresholds) {
        const auto rankings = recommend_all(apply_presence_threshold(model, t));
        report.rows.push_back(evaluate_rankings(rankings, ground_truth, t));
    }
    return report;
}

namespace {

std::string percent_label(double threshold) {
    char buf[32];
    const double pct = threshold * 100.0;
    if (std::abs(pct - std::round(pct)) < 1e-9)
        std::snprintf(buf, sizeof buf, "%.0f%%", std::round(pct));
    else
        std::snprintf(buf, sizeof buf, "%g%%", pct);
    return buf;
}

}  // namespace

std::string format_report_csv(const EvaluationReport& report) {
    std::string out = "Threshold,MeanR,MinR,MeanP,MinP,MeanF1,MinF1,mAP,MinAP\n";
    char buf[256];
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%s,%.5f,%.5f,%.5f,%.5f,%.5f,%.5f,%.5f,%.5f\n",
                      percent_label(r.threshold).c_str(), r.mean_recall, r.min_recall, r.mean_precision,
                      r.min_precision, r.mean_f1, r.min_f1, r.mean_ap, r.min_ap);
        out += buf;
    }
    return out;
}

AnnotationPrecisionTable annotation_precision(std::span<const AnnotationSet> annotations,
                                              const std::set<std::string>* known_centroids) {
    AnnotationPrecisionTable table;
    for (const auto& set : annotations) {
        ParticipantPrecision p{set.participant_id, 0, 0, 0.0};
        for (const auto& a : set.annotations) {
            if (known_centroids && !known_centroids->contains(a.centroid_id))
                throw ValidationError("participant '" + set.participant_id + "' annotates unknown centroid '" +
                                      a.centroid_id + "'");
            ++(a.correct ? p.correct : p.wrong);
        }
        const auto total = p.correct + p.wrong;
        p.precision = total == 0 ? 0.0 : static_cast<double>(p.correct) / static_cast<double>(total);
        table.participants.push_back(std::move(p));
    }
    if (!table.participants.empty()) {
        const auto n = static_cast<double>(table.participants.size());
        for (const auto& p : table.participants) {
            table.average_correct += static_cast<double>(p.correct);
            table.average_wrong += static_cast<double>(p.wrong);
            table.average_precision += p.precision;
        }
        table.average_correct /= n;
        table.average_wrong /= n;
        table.average_precision /= n;
    }
    return table;
}

std::string format_annotation_table(const AnnotationPrecisionTable& table) {
    std::string out = "Participant,#Correct,#Wrong,Precision\n";
    char buf[256];
    for (const auto& p : table.participants) {
        std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.2f%%\n", p.participant_id.c_str(), p.correct, p.wrong,
                      100.0 * p.precision);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "Avg,%.1f,%.1f,%.3f%%\n", table.average_correct, table.average_wrong,
                  100.0 * table.average_precision);
    out += buf;
    return out;
}

}  // namespace lecrec
