#include "lecrec/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace lecrec {

namespace {

void check_uniform_dimension(std::span<const Vector> data) {
    for (const auto& x : data)
        if (x.size() != data.front().size()) throw InvalidInput("data points differ in dimension");
}

}  // namespace

std::vector<double> pairwise_distances(std::span<const Vector> data) {
    const std::size_t n = data.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = euclidean_distance(data[i], data[j]);
    return d;
}

SilhouetteBreakdown silhouette_from_distances(std::span<const double> distances, const Assignment& assignment) {
    const std::size_t n = assignment.size();
    const std::size_t k = assignment.k();
    if (k < 2) throw InvalidInput("silhouette requires at least two clusters");
    if (distances.size() != n * n) throw InvalidInput("distance matrix does not match the assignment");

    std::vector<std::size_t> sizes(k, 0);
    for (auto l : assignment.labels()) ++sizes[l];

    SilhouetteBreakdown out;
    out.per_sample.resize(n, 0.0);
    std::vector<double> sums(k);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t own = assignment[i];
        if (sizes[own] == 1) continue;  // sigma = 0 for singletons
        std::fill(sums.begin(), sums.end(), 0.0);
        const double* row = distances.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) sums[assignment[j]] += row[j];

        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c)
            if (c != own) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        const double m = std::max(a, b);
        out.per_sample[i] = m > 0.0 ? (b - a) / m : 0.0;
    }
    out.score = std::accumulate(out.per_sample.begin(), out.per_sample.end(), 0.0) / static_cast<double>(n);
    return out;
}

SilhouetteBreakdown silhouette(std::span<const Vector> data, const Assignment& assignment) {
    if (data.size() != assignment.size()) throw InvalidInput("data and labels differ in length");
    if (assignment.k() < 2) throw InvalidInput("silhouette requires at least two clusters");
    check_uniform_dimension(data);
    return silhouette_from_distances(pairwise_distances(data), assignment);
}

WardDendrogram::WardDendrogram(std::span<const Vector> data) : n_(data.size()) {
    if (n_ == 0) throw InvalidInput("ward clustering of empty data");
    check_uniform_dimension(data);

    // cost[i * n + j]: Ward merge cost between the clusters in slots i and j.
    std::vector<double> cost(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            cost[i * n_ + j] = cost[j * n_ + i] = 0.5 * squared_distance(data[i], data[j]);

    std::vector<std::size_t> size(n_, 1);
    std::vector<std::size_t> active(n_);
    std::iota(active.begin(), active.end(), 0);
    merges_.reserve(n_ - 1);

    while (active.size() > 1) {
        std::size_t best_a = 0, best_b = 0;
        double best = std::numeric_limits<double>::infinity();
        // active is ascending, so the first strict minimum found is the
        // lexicographically smallest (a, b) among ties.
        for (std::size_t x = 0; x < active.size(); ++x) {
            const double* row = cost.data() + active[x] * n_;
            for (std::size_t y = x + 1; y < active.size(); ++y) {
                if (row[active[y]] < best) {
                    best = row[active[y]];
                    best_a = active[x];
                    best_b = active[y];
                }
            }
        }
        merges_.push_back({best_a, best_b, best});

        // Lance-Williams update for the Ward criterion.
        const double na = static_cast<double>(size[best_a]);
        const double nb = static_cast<double>(size[best_b]);
        for (auto c : active) {
            if (c == best_a || c == best_b) continue;
            const double nc = static_cast<double>(size[c]);
            const double updated =
                ((na + nc) * cost[c * n_ + best_a] + (nb + nc) * cost[c * n_ + best_b] - nc * best) /
                (na + nb + nc);
            cost[c * n_ + best_a] = cost[best_a * n_ + c] = updated;
        }
        size[best_a] += size[best_b];
        active.erase(std::find(active.begin(), active.end(), best_b));
    }
}

Assignment WardDendrogram::cut(std::size_t n_clusters) const {
    if (n_clusters < 1 || n_clusters > n_)
        throw InvalidInput("n_clusters must lie in 1.." + std::to_string(n_));
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t m = 0; m < n_ - n_clusters; ++m) parent[merges_[m].b] = merges_[m].a;
    // Slots only ever merge into a smaller slot, so resolving in ascending order works.
    for (std::size_t i = 0; i < n_; ++i) parent[i] = parent[parent[i]];
    return Assignment::from_raw(parent);
}

Assignment ward_cluster(std::span<const Vector> data, std::size_t n_clusters) {
    if (n_clusters < 1 || n_clusters > data.size())
        throw InvalidInput("n_clusters must lie in 1.." + std::to_string(data.size()));
    return WardDendrogram(data).cut(n_clusters);
}

void BlindClusteringParams::check() const {
    if (patience < 1) throw InvalidInput("patience must be >= 1");
    if (!(omega > -1.0 && omega < 1.0)) throw InvalidInput("omega must lie in (-1, 1)");
}

BlindClusteringResult blind_clustering_detailed(std::span<const Vector> data, const BlindClusteringParams& params) {
    params.check();
    const std::size_t n = data.size();
    if (n == 0) throw InvalidInput("blind clustering of empty data");
    if (n == 1) return {Assignment::one_cluster(1), std::nullopt, {}};

    const WardDendrogram dendrogram(data);
    const auto distances = pairwise_distances(data);

    std::size_t n_k = 1;
    double s_max = -1.0;
    std::size_t t_cur = 0;
    std::optional<Assignment> best;
    std::vector<std::pair<std::size_t, double>> trace;

    while (t_cur <= params.patience && n_k < n) {
        ++n_k;
        Assignment current = dendrogram.cut(n_k);
        const double s = silhouette_from_distances(distances, current).score;
        trace.emplace_back(n_k, s);
        if (s < s_max) {
            ++t_cur;
        } else {
            best = std::move(current);
            t_cur = 0;
            if (s > s_max) s_max = s;
        }
    }
    if (s_max < params.omega || !best) return {Assignment::one_cluster(n), std::nullopt, std::move(trace)};
    return {std::move(*best), s_max, std::move(trace)};
}

Assignment blind_clustering(std::span<const Vector> data, const BlindClusteringParams& params) {
    return blind_clustering_detailed(data, params).assignment;
}

std::vector<Centroid> centroids(std::span<const Vector> data, const Assignment& assignment) {
    if (data.size() != assignment.size()) throw InvalidInput("data and labels differ in length");
    if (data.empty()) return {};
    check_uniform_dimension(data);
    const std::size_t dim = data.front().size();
    std::vector<Centroid> out(assignment.k(), Centroid{Vector(dim, 0.0), 0});
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto& c = out[assignment[i]];
        for (std::size_t d = 0; d < dim; ++d) c.vector[d] += data[i][d];
        ++c.member_count;
    }
    for (auto& c : out)
        for (auto& x : c.vector) x /= static_cast<double>(c.member_count);
    return out;
}

}  // namespace lecrec
