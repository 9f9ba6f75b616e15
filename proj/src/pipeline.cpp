#include "lecrec/pipeline.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace lecrec {

std::vector<VideoRepresentation> represent_all(const VideoManifest& manifest, std::span<const EmbeddingRecord> records,
                                               const BlindClusteringParams& params, std::size_t threads) {
    params.check();
    if (auto issues = validate_manifest(manifest, records); !issues.empty()) {
        std::string msg = std::to_string(issues.size()) + " invalid record(s)";
        for (std::size_t i = 0; i < issues.size() && i < 10; ++i)
            msg += "\n  record " + std::to_string(issues[i].record_index) + " [" + to_string(issues[i].kind) +
                   "]: " + issues[i].message;
        throw ValidationError(msg);
    }

    std::map<std::string, std::vector<EmbeddingRecord>> by_video;
    for (const auto& v : manifest.videos) by_video[v.video_id];
    for (const auto& r : records) by_video[r.video_id].push_back(r);

    std::vector<VideoRepresentation> out(manifest.videos.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, out.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < out.size(); i = next++) {
            try {
                const auto& id = manifest.videos[i].video_id;
                out[i] = represent_video(by_video.at(id), id, manifest, params);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace lecrec
