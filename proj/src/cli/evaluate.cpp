#include <fstream>
#include <ostream>
#include <set>

#include "genmetrics/cli.hpp"
#include "genmetrics/efficiency.hpp"
#include "genmetrics/error.hpp"
#include "genmetrics/frechet.hpp"
#include "genmetrics/ranking.hpp"
#include "genmetrics/scores.hpp"

namespace fs = std::filesystem;

namespace genmetrics::cli {

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
    f << text;
    if (!f) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

std::string filter_name(FilterKind f) { return std::string(to_string(f)); }

}  // namespace

MetricReport compute_report(const RunConfig& config, const FeatureFile& real, const FeatureFile& fake,
                            std::vector<std::string>* warnings) {
    const BackboneRegistry registry = config.registry();
    const BackboneSpec& spec = registry.find(config.backbone);
    const FeatureSet& src = real.features;
    const FeatureSet& tgt = fake.features;
    if (src.dim() != tgt.dim())
        throw Error(ErrorCode::DimensionMismatch, "real features have D=" + std::to_string(src.dim()) +
                                                      ", generated features have D=" + std::to_string(tgt.dim()));

    MetricReport report;
    report.backbone = spec.name;
    report.model_name = config.model_name.empty() ? tgt.source_tag() : config.model_name;
    auto warn = [&](const std::string& msg) {
        report.notes.push_back(msg);
        if (warnings) warnings->push_back(msg);
    };

    auto& p = report.protocol;
    if (config.reference) {
        p.reference_split = config.reference->name;
        p.reference_count = config.reference->count;
        if (config.reference->count != src.count())
            warn("declared reference count " + std::to_string(config.reference->count) + " differs from the " +
                 std::to_string(src.count()) + " reference features supplied");
    } else {
        p.reference_split = "undeclared";
        p.reference_count = src.count();
        warn("reference split not declared; results are not comparable across studies");
    }
    p.generated_count = tgt.count();
    p.resizers_used["preprocess"] = filter_name(config.preprocess_filter);
    p.resizers_used["backbone"] = filter_name(config.friendly_resizer_override.value_or(spec.friendly_filter));
    p.friendly_resizer_override = config.friendly_resizer_override.has_value();
    if (p.friendly_resizer_override)
        warn("nonstandard evaluation: backbone resizer overridden to " + filter_name(*config.friendly_resizer_override) +
             " (friendly resizer for " + spec.name + " is " + filter_name(spec.friendly_filter) + ")");
    p.settings["k_pr"] = config.manifold.k_pr;
    p.settings["k_dc"] = config.manifold.k_dc;
    p.settings["splits"] = config.splits;
    p.settings["covariance_divisor"] = "N-1";

    if (static_cast<int>(src.dim()) != spec.feature_dim)
        warn("feature dim " + std::to_string(src.dim()) + " differs from " + spec.name + "'s " +
             std::to_string(spec.feature_dim));
    if (src.count() != tgt.count() && !config.allow_count_mismatch)
        warn("generated count " + std::to_string(tgt.count()) + " differs from reference count " +
             std::to_string(src.count()));

    const FrechetResult fd = frechet_distance_detailed(summarize(src), summarize(tgt));
    report.set(spec, MetricKind::FrechetDistance, fd.value);
    if (fd.negative_eigenvalue_warning)
        warn(spec.fd_name + ": covariance product has negative eigenvalue " +
             std::to_string(fd.most_negative_eigenvalue) + " (clamped to 0)");

    const PrdcResult pr = prdc(src, tgt, config.manifold);
    report.set(spec, MetricKind::Precision, pr.precision);
    report.set(spec, MetricKind::Recall, pr.recall);
    report.set(spec, MetricKind::Density, pr.density);
    report.set(spec, MetricKind::Coverage, pr.coverage);

    if (fake.posteriors) {
        const ScoreResult score = classifier_score(*fake.posteriors, config.splits);
        report.set(spec, MetricKind::Score, score.mean);
        p.settings["score_std"] = score.std;
    } else {
        report.notes.push_back(spec.score_name + " omitted: generated features carry no class posteriors");
    }

    if (src.has_labels() && tgt.has_labels()) {
        try {
            report.set(spec, MetricKind::IntraClassFD, intra_class_fd(src, tgt));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ClassTooSmall && e.code() != ErrorCode::LabelMismatch) throw;
            report.notes.push_back(spec.intra_class_fd_name() + " omitted: " + e.what());
        }
    } else {
        report.notes.push_back(spec.intra_class_fd_name() + " omitted: both feature sets need class labels");
    }

    if (fake.posteriors && tgt.has_labels()) {
        report.set(spec, MetricKind::Top1, top_k_accuracy(*fake.posteriors, tgt.labels(), 1));
        if (fake.posteriors->classes() >= 5)
            report.set(spec, MetricKind::Top5, top_k_accuracy(*fake.posteriors, tgt.labels(), 5));
        else
            report.notes.push_back(std::string(kTop5Name) + " omitted: fewer than 5 classes");
    } else {
        report.notes.push_back("accuracy omitted: generated features need class labels and posteriors");
    }
    return report;
}

int cmd_metrics(const RunConfig& config, const fs::path& real_path, const fs::path& fake_path, std::ostream& out,
                std::ostream& err) {
    config.validate();
    if (!config.reference)
        throw Error(ErrorCode::MissingReferenceDeclaration,
                    "metrics needs --ref-split NAME:COUNT declaring the reference data split and size");
    const FeatureFile real = read_features(real_path);
    const FeatureFile fake = read_features(fake_path);
    RunConfig cfg = config;
    if (cfg.model_name.empty()) cfg.model_name = fake_path.stem().string();
    std::vector<std::string> warnings;
    const MetricReport report = compute_report(cfg, real, fake, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    if (!config.out.empty()) write_json(config.out, report_to_json(report));
    out << report_to_text(report);
    return kSuccess;
}

int cmd_compare(const RunConfig& config, const fs::path& source_path, const std::vector<fs::path>& targets,
                std::ostream& out, std::ostream& err) {
    config.validate();
    if (targets.empty()) throw UsageError("compare needs at least one --target");
    if (config.out.empty()) throw UsageError("compare needs --out DIR");
    const std::vector<double> fractions = config.fractions.empty() ? kDefaultFractions : config.fractions;

    const FeatureFile source = read_features(source_path);
    const BackboneRegistry registry = config.registry();
    const BackboneSpec& spec = registry.find(config.backbone);

    fs::create_directories(config.out / "reports");
    fs::create_directories(config.out / "curves");

    const CurveOptions options{spec.name, config.with_replacement};
    const GaussianSummary source_summary = summarize(source.features);
    const EfficiencyCurve r2r = real_to_real_curve(source.features, fractions, config.seed, options);
    write_text(config.out / "curves" / "real_to_real.csv", curve_to_csv(r2r));
    write_json(config.out / "curves" / "real_to_real.json", curve_to_json(r2r));

    nlohmann::json summary;
    summary["format"] = "genmetrics.compare/1";
    summary["backbone"] = spec.name;
    summary["source"] = source_path.filename().string();
    summary["seed"] = config.seed;
    summary["targets"] = nlohmann::json::array();

    std::vector<MetricReport> reports;
    std::set<std::string> used_names;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const FeatureFile target = read_features(targets[t]);
        RunConfig cfg = config;
        std::string name = targets[t].stem().string();
        if (used_names.count(name)) name += "#" + std::to_string(t);
        used_names.insert(name);
        cfg.model_name = name;

        std::vector<std::string> warnings;
        MetricReport report = compute_report(cfg, source, target, &warnings);
        for (const auto& w : warnings) err << "warning: " << name << ": " << w << "\n";
        write_json(config.out / "reports" / (name + ".json"), report_to_json(report));

        nlohmann::json entry{{"model_name", name}, {"file", targets[t].filename().string()}};
        try {
            const EfficiencyCurve rel =
                relative_fd_curve(source_summary, target.features, fractions, config.seed, options);
            write_text(config.out / "curves" / ("relative_fd_" + name + ".csv"), curve_to_csv(rel));
            write_json(config.out / "curves" / ("relative_fd_" + name + ".json"), curve_to_json(rel));
            entry["relative_fd_curve"] = "curves/relative_fd_" + name + ".json";
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateReference) throw;
            entry["relative_fd_curve"] = nullptr;
            entry["relative_fd_skipped"] = "full-set FD is 0, relative FD undefined";
        }
        summary["targets"].push_back(entry);
        reports.push_back(std::move(report));
    }

    // Rank on the metrics every target produced.
    std::set<std::string> shared;
    for (const auto& [name, e] : reports.front().entries) shared.insert(name);
    for (const auto& r : reports)
        for (auto it = shared.begin(); it != shared.end();)
            it = r.entries.count(*it) ? std::next(it) : shared.erase(it);
    std::vector<MetricReport> rankable = reports;
    for (auto& r : rankable)
        for (auto it = r.entries.begin(); it != r.entries.end();)
            it = shared.count(it->first) ? std::next(it) : r.entries.erase(it);

    const RankingTable table = rank_models(rankable);
    write_text(config.out / "ranking.csv", ranking_to_csv(table));
    write_text(config.out / "ranking.txt", ranking_to_text(table));
    write_json(config.out / "ranking.json", ranking_to_json(table));
    summary["ranking"] = "ranking.json";
    summary["real_to_real_curve"] = "curves/real_to_real.json";
    write_json(config.out / "compare.json", summary);

    out << ranking_to_text(table);
    return kSuccess;
}

}  // namespace genmetrics::cli
