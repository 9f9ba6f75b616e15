#include "lecrec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

namespace lecrec {

std::size_t SeededRandom::uniform_int(std::size_t lo, std::size_t hi) {
    if (hi < lo) throw InvalidInput("empty integer range");
    const auto span = static_cast<double>(hi - lo + 1);
    return lo + std::min(hi - lo, static_cast<std::size_t>(uniform() * span));
}

double SeededRandom::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SyntheticSpec::check() const {
    if (n_lecturers == 0) throw InvalidInput("n_lecturers must be positive");
    if (n_videos == 0) throw InvalidInput("n_videos must be positive");
    if (dimension == 0) throw InvalidInput("dimension must be positive");
    if (lecturers_per_video.min == 0 || lecturers_per_video.min > lecturers_per_video.max)
        throw InvalidInput("lecturers_per_video must be a non-empty range of positive counts");
    if (lecturers_per_video.min > n_lecturers)
        throw InvalidInput("lecturers_per_video.min exceeds n_lecturers");
    if (frames_per_video.min == 0 || frames_per_video.min > frames_per_video.max)
        throw InvalidInput("frames_per_video must be a non-empty range of positive counts");
    if (!(presence_fraction.min > 0.0 && presence_fraction.min <= presence_fraction.max &&
          presence_fraction.max <= 1.0))
        throw InvalidInput("presence_fraction must be a non-empty sub-range of (0, 1]");
    if (!(blob_std > 0.0)) throw InvalidInput("blob_std must be positive");
    if (!(center_separation >= 1.0)) throw InvalidInput("center_separation must be >= 1");
}

SyntheticSpec SyntheticSpec::paper_profile(std::uint64_t seed) {
    SyntheticSpec s;
    s.dataset_id = "paper-profile";
    s.seed = seed;
    return s;
}

std::vector<Vector> draw_centers(std::size_t count, std::size_t dim, double min_distance, SeededRandom& rng) {
    // Typical pair distance is about three times the minimum; the second term
    // leaves room to place `count` points in low dimensions.
    const auto d = static_cast<double>(dim);
    const double scale = min_distance * std::max(3.0 / std::sqrt(2.0 * d),
                                                 0.5 * std::pow(static_cast<double>(count), 1.0 / d) / std::sqrt(d));
    constexpr int max_attempts = 10000;
    std::vector<Vector> centers;
    for (std::size_t c = 0; c < count; ++c) {
        bool placed = false;
        for (int attempt = 0; attempt < max_attempts && !placed; ++attempt) {
            Vector candidate(dim);
            for (auto& x : candidate) x = scale * rng.normal();
            placed = std::all_of(centers.begin(), centers.end(), [&](const Vector& other) {
                return euclidean_distance(candidate, other) >= min_distance;
            });
            if (placed) centers.push_back(std::move(candidate));
        }
        if (!placed)
            throw GenerationError("could not place lecturer center " + std::to_string(c) + " at separation " +
                                  std::to_string(min_distance));
    }
    return centers;
}

std::pair<std::vector<Vector>, std::vector<std::size_t>> make_blobs(std::span<const Vector> centers,
                                                                      std::size_t per_blob, double std_dev,
                                                                      SeededRandom& rng) {
    std::vector<Vector> points;
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        for (std::size_t i = 0; i < per_blob; ++i) {
            Vector p = centers[c];
            for (auto& x : p) x += std_dev * rng.normal();
            points.push_back(std::move(p));
            labels.push_back(c);
        }
    }
    return {std::move(points), std::move(labels)};
}

namespace {

// First `count` entries of a partial Fisher-Yates shuffle of 0..n-1, sorted.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, SeededRandom& rng) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[rng.uniform_int(i, n - 1)]);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::string numbered(char prefix, std::size_t i, std::size_t total) {
    const int width = std::max(2, static_cast<int>(std::to_string(total - 1).size()));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, i);
    return buf;
}

}  // namespace

SyntheticDataset generate(const SyntheticSpec& spec) {
    spec.check();
    SeededRandom rng(spec.seed);
    SyntheticDataset out;
    out.lecturer_centers =
        draw_centers(spec.n_lecturers, spec.dimension, spec.center_separation * spec.blob_std, rng);

    auto& m = out.manifest;
    m.dataset_id = spec.dataset_id;
    m.dimension = spec.dimension;
    m.frame_rate = 1.0;
    m.ground_truth.emplace();

    const std::size_t lpv_max = std::min(spec.lecturers_per_video.max, spec.n_lecturers);
    for (std::size_t v = 0; v < spec.n_videos; ++v) {
        const std::string video_id = numbered('v', v, spec.n_videos);
        const std::size_t frames = rng.uniform_int(spec.frames_per_video.min, spec.frames_per_video.max);
        const std::size_t n_present = rng.uniform_int(spec.lecturers_per_video.min, lpv_max);
        const auto lecturers = sample_without_replacement(spec.n_lecturers, n_present, rng);

        m.videos.push_back({video_id, frames});
        auto& truth = (*m.ground_truth)[video_id];

        // frame -> lecturers on screen, ascending
        std::vector<std::vector<std::size_t>> on_screen(frames);
        for (auto l : lecturers) {
            const double p = rng.uniform(spec.presence_fraction.min, spec.presence_fraction.max);
            const auto count = std::clamp<std::size_t>(
                static_cast<std::size_t>(std::llround(p * static_cast<double>(frames))), 1, frames);
            for (auto f : sample_without_replacement(frames, count, rng)) on_screen[f].push_back(l);
            const auto label = numbered('L', l, spec.n_lecturers);
            truth.lecturers.insert(label);
            truth.presence[label] = static_cast<double>(count) / static_cast<double>(frames);
        }

        for (std::size_t f = 0; f < frames; ++f) {
            for (std::size_t face = 0; face < on_screen[f].size(); ++face) {
                Vector x = out.lecturer_centers[on_screen[f][face]];
                for (auto& c : x) c += spec.blob_std * rng.normal();
                out.records.push_back({video_id, f, face, std::move(x)});
                out.record_lecturers.push_back(on_screen[f][face]);
            }
        }
    }
    return out;
}

double mean_presence(const VideoManifest& manifest, std::size_t n_lecturers) {
    if (!manifest.ground_truth) throw InvalidInput("manifest has no ground truth");
    if (n_lecturers == 0 || manifest.videos.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& [_, entry] : *manifest.ground_truth)
        for (const auto& [__, p] : entry.presence) sum += p;
    return sum / static_cast<double>(n_lecturers * manifest.videos.size());
}

namespace oracle {

SilhouetteBreakdown silhouette(std::span<const Vector> data, std::span<const std::size_t> labels) {
    const std::size_t n = data.size();
    std::set<std::size_t> clusters(labels.begin(), labels.end());
    if (clusters.size() < 2) throw InvalidInput("silhouette requires at least two clusters");

    SilhouetteBreakdown out;
    for (std::size_t i = 0; i < n; ++i) {
        double own_sum = 0.0;
        std::size_t own_count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || labels[j] != labels[i]) continue;
            own_sum += euclidean_distance(data[i], data[j]);
            ++own_count;
        }
        if (own_count == 0) {
            out.per_sample.push_back(0.0);
            continue;
        }
        const double a = own_sum / static_cast<double>(own_count);
        double b = std::numeric_limits<double>::infinity();
        for (auto c : clusters) {
            if (c == labels[i]) continue;
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (labels[j] != c) continue;
                sum += euclidean_distance(data[i], data[j]);
                ++count;
            }
            b = std::min(b, sum / static_cast<double>(count));
        }
        const double m = std::max(a, b);
        out.per_sample.push_back(m > 0.0 ? (b - a) / m : 0.0);
    }
    double total = 0.0;
    for (double s : out.per_sample) total += s;
    out.score = total / static_cast<double>(n);
    return out;
}

Assignment ward(std::span<const Vector> data, std::size_t n_clusters) {
    const std::size_t n = data.size();
    if (n_clusters < 1 || n_clusters > n) throw InvalidInput("n_clusters out of range");
    const std::size_t dim = data.front().size();

    // Each cluster is its ascending member list; the list is kept sorted by smallest member.
    std::vector<std::vector<std::size_t>> clusters(n);
    for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};

    while (clusters.size() > n_clusters) {
        std::vector<Vector> means;
        for (const auto& c : clusters) {
            Vector mu(dim, 0.0);
            for (auto i : c)
                for (std::size_t d = 0; d < dim; ++d) mu[d] += data[i][d];
            for (auto& x : mu) x /= static_cast<double>(c.size());
            means.push_back(std::move(mu));
        }
        std::size_t bi = 0, bj = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                const auto ni = static_cast<double>(clusters[i].size());
                const auto nj = static_cast<double>(clusters[j].size());
                const double cost = ni * nj / (ni + nj) * squared_distance(means[i], means[j]);
                if (cost < best) {
                    best = cost;
                    bi = i;
                    bj = j;
                }
            }
        }
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(clusters[bi].begin(), clusters[bi].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    }

    std::vector<std::size_t> raw(n);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (auto i : clusters[c]) raw[i] = c;
    return Assignment::from_raw(raw);
}

BestSilhouette best_silhouette(std::span<const Vector> data, std::size_t k_max) {
    if (k_max < 2 || k_max > data.size()) throw InvalidInput("k_max must lie in 2..|data|");
    BestSilhouette best{0, Assignment::one_cluster(data.size()), -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 2; k <= k_max; ++k) {
        auto a = ward_cluster(data, k);
        const double s = silhouette(data, a.labels()).score;
        if (s > best.score) best = {k, std::move(a), s};
    }
    return best;
}

std::map<std::string, Ranking> rankings(const std::map<std::string, GroundTruthEntry>& ground_truth,
                                        double threshold) {
    std::set<std::string> labels;
    for (const auto& [_, e] : ground_truth) labels.insert(e.lecturers.begin(), e.lecturers.end());
    const std::vector<std::string> label_list(labels.begin(), labels.end());

    auto p = [&](const GroundTruthEntry& e, const std::string& label) {
        auto it = e.presence.find(label);
        const double value = it == e.presence.end() ? 0.0 : it->second;
        return value < threshold ? 0.0 : value;
    };

    std::map<std::string, Ranking> out;
    for (const auto& [v, ev] : ground_truth) {
        Ranking r{v, {}};
        for (const auto& [u, eu] : ground_truth) {
            if (u == v) continue;
            RankingEntry e{u, 0.0, {}};
            std::vector<double> terms;
            for (std::size_t l = 0; l < label_list.size(); ++l) {
                const double pv = p(ev, label_list[l]);
                const double pu = p(eu, label_list[l]);
                if (pv > 0.0 && pu > 0.0) {
                    terms.push_back(pv * pu);
                    e.shared_lecturers.push_back(l);
                }
            }
            std::sort(terms.begin(), terms.end());
            for (double t : terms) e.score += t;
            r.entries.push_back(std::move(e));
        }
        sort_ranking(r);
        out.emplace(v, std::move(r));
    }
    return out;
}

}  // namespace oracle

}  // namespace lecrec
