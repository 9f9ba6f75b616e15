// lecrec: lecturer-presence video recommendation over files.
//
//   lecrec synth            --out DIR [--spec FILE] [--seed N]
//   lecrec represent        --manifest FILE --embeddings FILE --out DIR
//   lecrec recommend        --representations DIR --out DIR [--threshold P]
//   lecrec evaluate         --manifest FILE (--identities FILE | --rankings FILE) --out FILE
//   lecrec evaluate         --annotations FILE... [--bundle FILE] --out FILE
//   lecrec export-review    --identities FILE --representations DIR --out FILE
//   lecrec import-annotations --annotations FILE [--bundle FILE] [--out FILE]
//
// Exit codes: 0 ok, 1 internal error, 2 usage, 3 validation, 4 IO.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lecrec/evaluation.hpp"
#include "lecrec/io.hpp"
#include "lecrec/pipeline.hpp"
#include "lecrec/recommender.hpp"
#include "lecrec/synthetic.hpp"

namespace fs = std::filesystem;
using namespace lecrec;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kValidation = 3, kIo = 4 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void log(const std::string& msg) { std::cerr << "lecrec: " << msg << '\n'; }

double parse_fraction(std::string text) {
    bool percent = false;
    if (!text.empty() && text.back() == '%') {
        percent = true;
        text.pop_back();
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + text + "'");
    }
    if (used != text.size()) throw UsageError("not a number: '" + text + "'");
    return percent ? value / 100.0 : value;
}

// "from:to:step" or a comma-separated list; values are fractions or percentages ("5%").
std::vector<double> parse_thresholds(const std::string& spec) {
    if (spec.empty()) return default_thresholds();
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("--thresholds range must be from:to:step");
        const double from = parse_fraction(parts[0]), to = parse_fraction(parts[1]), step = parse_fraction(parts[2]);
        // Snap to a 1e-12 grid so "0:25%:1%" yields exactly i / 100.
        auto out = threshold_range(from, to, step);
        for (auto& t : out) t = std::round(t * 1e12) / 1e12;
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_fraction(p));
    return out;
}

std::vector<fs::path> json_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<VideoRepresentation> read_representations(const fs::path& dir) {
    std::vector<VideoRepresentation> reps;
    for (const auto& f : json_files(dir)) {
        try {
            reps.push_back(io::representation_from_json(io::read_json(f)));
        } catch (const ValidationError& e) {
            throw ValidationError(f.string() + ": " + e.what());
        }
    }
    return reps;
}

BlindClusteringParams params_from(std::size_t patience, double omega) {
    BlindClusteringParams p{patience, omega};
    try {
        p.check();
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    return p;
}

// --- commands -------------------------------------------------------------

struct SynthOptions {
    std::string spec_file;
    std::optional<std::uint64_t> seed;
    std::string out;
};

void cmd_synth(const SynthOptions& o) {
    SyntheticSpec spec = SyntheticSpec::paper_profile();
    if (!o.spec_file.empty()) spec = io::synthetic_spec_from_json(io::read_json(o.spec_file));
    if (o.seed) spec.seed = *o.seed;
    SyntheticDataset ds;
    try {
        ds = generate(spec);
    } catch (const GenerationError& e) {
        throw ValidationError(e.what());
    }
    const fs::path out(o.out);
    io::write_json(out / "manifest.json", io::to_json(ds.manifest));
    io::write_text(out / "embeddings.jsonl", io::format_records(ds.records));
    log("wrote " + std::to_string(ds.manifest.videos.size()) + " videos, " + std::to_string(ds.records.size()) +
        " embeddings to " + out.string());
}

struct RepresentOptions {
    std::string manifest, embeddings, out;
    std::size_t patience = 5;
    double omega = 0.2;
    std::size_t threads = 0;
};

void cmd_represent(const RepresentOptions& o) {
    const auto params = params_from(o.patience, o.omega);
    const auto manifest = io::manifest_from_json(io::read_json(o.manifest));
    const auto records = io::read_records(o.embeddings);
    const auto reps = represent_all(manifest, records, params, o.threads);

    const fs::path out(o.out);
    for (const auto& rep : reps) {
        io::write_json(out / "representations" / (rep.video_id + ".json"), io::to_json(rep));
        io::write_json(out / "timelines" / (rep.video_id + ".json"), io::to_json(build_timeline(rep), manifest.frame_rate));
    }
    log("represented " + std::to_string(reps.size()) + " videos into " + out.string());
}

struct RecommendOptions {
    std::string representations, out, threshold = "0";
    std::size_t patience = 5;
    double omega = 0.2;
};

void cmd_recommend(const RecommendOptions& o) {
    const auto params = params_from(o.patience, o.omega);
    const double threshold = parse_fraction(o.threshold);
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw UsageError("--threshold must lie in [0, 1]");
    const auto reps = read_representations(o.representations);
    IdentityModel model;
    try {
        model = build_identities(reps, params);
    } catch (const InvalidInput& e) {
        throw ValidationError(e.what());
    }
    const fs::path out(o.out);
    io::write_json(out / "identities.json", io::to_json(model));
    io::write_json(out / "recommendations.json",
                   io::rankings_to_json(recommend_all(apply_presence_threshold(model, threshold)), threshold));
    log(std::to_string(model.n_identities) + " lecturer identities across " + std::to_string(model.videos.size()) +
        " videos");
}

struct EvaluateOptions {
    std::string manifest, identities, rankings, bundle, out, json_out, thresholds;
    std::vector<std::string> annotations;
};

void cmd_evaluate(const EvaluateOptions& o) {
    if (!o.annotations.empty()) {
        std::vector<AnnotationSet> sets;
        for (const auto& f : o.annotations) sets.push_back(io::parse_annotations(io::read_text(f), f));
        std::optional<std::set<std::string>> known;
        if (!o.bundle.empty()) known = io::bundle_centroid_ids(io::read_json(o.bundle));
        const auto table = annotation_precision(sets, known ? &*known : nullptr);
        io::write_text(o.out, format_annotation_table(table));
        return;
    }
    if (o.manifest.empty()) throw UsageError("evaluate needs --manifest with ground truth");
    if (o.identities.empty() == o.rankings.empty())
        throw UsageError("evaluate needs exactly one of --identities or --rankings");

    const auto manifest = io::manifest_from_json(io::read_json(o.manifest));
    if (!manifest.ground_truth) throw ValidationError("manifest has no ground_truth section");

    EvaluationReport report;
    if (!o.identities.empty()) {
        const auto model = io::identity_model_from_json(io::read_json(o.identities));
        const auto thresholds = parse_thresholds(o.thresholds);
        try {
            report = threshold_sweep(model, *manifest.ground_truth, thresholds);
        } catch (const InvalidInput& e) {
            throw ValidationError(e.what());
        }
    } else {
        double threshold = 0.0;
        const auto rankings = io::rankings_from_json(io::read_json(o.rankings), &threshold);
        for (const auto& [v, _] : rankings)
            if (!manifest.ground_truth->contains(v)) throw ValidationError("ranking for unknown video '" + v + "'");
        report.rows.push_back(evaluate_rankings(rankings, *manifest.ground_truth, threshold));
    }
    io::write_text(o.out, format_report_csv(report));
    if (!o.json_out.empty()) io::write_json(o.json_out, io::report_to_json(report));
    for (const auto& r : report.rows)
        if (!r.min_ap_video.empty() && r.min_ap < 1.0)
            log("threshold " + std::to_string(r.threshold) + ": MinAP " + std::to_string(r.min_ap) + " at " +
                r.min_ap_video);
}

struct ExportOptions {
    std::string identities, representations, out;
};

void cmd_export_review(const ExportOptions& o) {
    const auto model = io::identity_model_from_json(io::read_json(o.identities));
    const auto reps = read_representations(o.representations);
    io::write_json(o.out, io::review_bundle(model, reps));
}

struct ImportOptions {
    std::string annotations, bundle, out;
};

void cmd_import_annotations(const ImportOptions& o) {
    const auto set = io::parse_annotations(io::read_text(o.annotations), o.annotations);
    if (!o.bundle.empty()) {
        const auto known = io::bundle_centroid_ids(io::read_json(o.bundle));
        annotation_precision(std::span(&set, 1), &known);
    }
    const auto text = io::to_json(set).dump(2) + "\n";
    if (o.out.empty())
        std::cout << text;
    else
        io::write_text(o.out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lecturer-presence video recommendation"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* s = app.add_subcommand("synth", "Generate a synthetic dataset with ground truth");
    s->add_option("--spec", synth.spec_file, "Synthetic spec JSON (default: benchmark profile)");
    s->add_option("--seed", synth.seed, "Override the spec seed");
    s->add_option("--out", synth.out, "Output directory")->required();

    RepresentOptions rep;
    auto* r = app.add_subcommand("represent", "Cluster each video's faces into lecturers");
    r->add_option("--manifest", rep.manifest)->required();
    r->add_option("--embeddings", rep.embeddings)->required();
    r->add_option("--out", rep.out)->required();
    r->add_option("--patience", rep.patience, "Patience t")->capture_default_str();
    r->add_option("--omega", rep.omega, "Silhouette floor")->capture_default_str();
    r->add_option("--threads", rep.threads, "Worker threads (0 = all cores)");

    RecommendOptions rec;
    auto* c = app.add_subcommand("recommend", "Cluster centroids into identities and rank videos");
    c->add_option("--representations", rec.representations)->required();
    c->add_option("--out", rec.out)->required();
    c->add_option("--threshold", rec.threshold, "Presence threshold, fraction or percent")->capture_default_str();
    c->add_option("--patience", rec.patience)->capture_default_str();
    c->add_option("--omega", rec.omega)->capture_default_str();

    EvaluateOptions ev;
    auto* e = app.add_subcommand("evaluate", "Threshold sweep report or annotation precision table");
    e->add_option("--manifest", ev.manifest, "Manifest with ground_truth");
    e->add_option("--identities", ev.identities, "Identity model to sweep over thresholds");
    e->add_option("--rankings", ev.rankings, "Recommendations file to score as is");
    e->add_option("--thresholds", ev.thresholds, "from:to:step or comma list (default 0%:25%:1%)");
    e->add_option("--annotations", ev.annotations, "Annotation files (precision table mode)");
    e->add_option("--bundle", ev.bundle, "Review bundle to validate annotations against");
    e->add_option("--json", ev.json_out, "Also write the report as JSON");
    e->add_option("--out", ev.out)->required();

    ExportOptions ex;
    auto* x = app.add_subcommand("export-review", "Write the review bundle for the annotation UI");
    x->add_option("--identities", ex.identities)->required();
    x->add_option("--representations", ex.representations)->required();
    x->add_option("--out", ex.out)->required();

    ImportOptions im;
    auto* i = app.add_subcommand("import-annotations", "Validate and normalize an annotation export");
    i->add_option("--annotations", im.annotations)->required();
    i->add_option("--bundle", im.bundle);
    i->add_option("--out", im.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*s) cmd_synth(synth);
        if (*r) cmd_represent(rep);
        if (*c) cmd_recommend(rec);
        if (*e) cmd_evaluate(ev);
        if (*x) cmd_export_review(ex);
        if (*i) cmd_import_annotations(im);
    } catch (const UsageError& err) {
        log(std::string("usage: ") + err.what());
        return kUsage;
    } catch (const IoError& err) {
        log(std::string("io error: ") + err.what());
        return kIo;
    } catch (const ValidationError& err) {
        log(std::string("validation error: ") + err.what());
        return kValidation;
    } catch (const nlohmann::json::exception& err) {
        log(std::string("validation error: ") + err.what());
        return kValidation;
    } catch (const InvalidInput& err) {
        log(std::string("validation error: ") + err.what());
        return kValidation;
    } catch (const std::exception& err) {
        log(std::string("error: ") + err.what());
        return kInternal;
    }
    return kOk;
}
