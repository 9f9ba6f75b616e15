#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lecrec/clustering.hpp"
#include "lecrec/video.hpp"

namespace lecrec {

/// Validates the dataset and represents every manifest video, in manifest
/// order. Videos are processed on up to `threads` workers (0 = hardware
/// concurrency); output does not depend on the worker count.
std::vector<VideoRepresentation> represent_all(const VideoManifest& manifest, std::span<const EmbeddingRecord> records,
                                               const BlindClusteringParams& params, std::size_t threads = 0);

}  // namespace lecrec
