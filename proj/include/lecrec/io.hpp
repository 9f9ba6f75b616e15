#pragma once

// File formats for every inter-stage artifact. All documents are JSON with a
// fixed field order; embeddings are one JSON object per line.

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lecrec/evaluation.hpp"
#include "lecrec/recommender.hpp"
#include "lecrec/synthetic.hpp"
#include "lecrec/video.hpp"

namespace lecrec::io {

using Json = nlohmann::ordered_json;

inline constexpr int kReviewFormatVersion = 1;

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Parses a whole document; syntax errors become ValidationError naming the file.
Json parse_json(const std::string& text, const std::string& origin);
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& doc);

Json to_json(const EmbeddingRecord& r);
EmbeddingRecord record_from_json(const Json& j);
std::string format_records(const std::vector<EmbeddingRecord>& records);
std::vector<EmbeddingRecord> parse_records(const std::string& text, const std::string& origin);
std::vector<EmbeddingRecord> read_records(const std::filesystem::path& path);

Json to_json(const VideoManifest& m);
VideoManifest manifest_from_json(const Json& j);

Json to_json(const SyntheticSpec& s);
/// Missing fields keep their defaults; unknown fields are rejected.
SyntheticSpec synthetic_spec_from_json(const Json& j);

Json to_json(const VideoRepresentation& rep);
VideoRepresentation representation_from_json(const Json& j);

Json to_json(const Timeline& t, double frame_rate);

Json to_json(const IdentityModel& m);
IdentityModel identity_model_from_json(const Json& j);

Json rankings_to_json(const std::map<std::string, Ranking>& rankings, double threshold);
std::map<std::string, Ranking> rankings_from_json(const Json& j, double* threshold = nullptr);

/// "<video_id>#<cluster_id>"
std::string centroid_id(const CentroidKey& key);

/// Review bundle: identities as groups, each listing its member centroids
/// with frame intervals and a color glyph derived from the centroid vector.
Json review_bundle(const IdentityModel& model, const std::vector<VideoRepresentation>& reps);
std::set<std::string> bundle_centroid_ids(const Json& bundle);

Json to_json(const AnnotationSet& a);
/// Blank text yields an empty set.
AnnotationSet parse_annotations(const std::string& text, const std::string& origin);

Json report_to_json(const EvaluationReport& report);

}  // namespace lecrec::io
