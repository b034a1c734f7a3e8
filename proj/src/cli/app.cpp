#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "genmetrics/cli.hpp"
#include "genmetrics/efficiency.hpp"
#include "genmetrics/error.hpp"
#include "genmetrics/ranking.hpp"

namespace fs = std::filesystem;

namespace genmetrics::cli {

namespace {

// Raw flag values; applied onto the config-file settings only when given.
struct Flags {
    std::string config;
    std::string backbone;
    std::string filter;
    int resolution = 0;
    std::size_t k_pr = 0, k_dc = 0, splits = 0;
    std::string fractions;
    std::uint64_t seed = 0;
    std::string ref_split;
    std::string out;
    std::string override_filter;
    std::string model_name;
    std::string input;
    bool allow_count_mismatch = false;
    bool with_replacement = false;
    bool backbone_pixels = false;
};

std::vector<double> parse_fractions(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad fraction '" + item + "' in --fractions");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

FilterKind parse_filter_flag(const std::string& text, const char* flag) {
    const auto f = parse_filter(text);
    if (!f) throw UsageError(std::string("unknown filter for ") + flag + ": " + text);
    return *f;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file; flags override its values");
    cmd->add_option("--backbone", f.backbone, "Evaluation backbone (InceptionV3, SwAV, Swin-T or custom)");
    cmd->add_option("--override-friendly-resizer", f.override_filter,
                    "Use this filter instead of the backbone's friendly resizer (recorded in reports)");
}

RunConfig build_config(const CLI::App& cmd, const Flags& f) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_config_file(f.config);
    auto given = [&](const char* name) {
        const CLI::Option* opt = cmd.get_option_no_throw(name);
        return opt && opt->count() > 0;
    };
    if (given("--backbone")) c.backbone = f.backbone;
    if (given("--filter")) c.preprocess_filter = parse_filter_flag(f.filter, "--filter");
    if (given("--resolution")) c.resolution = f.resolution;
    if (given("--k-pr")) c.manifold.k_pr = f.k_pr;
    if (given("--k-dc")) c.manifold.k_dc = f.k_dc;
    if (given("--splits")) c.splits = f.splits;
    if (given("--fractions")) c.fractions = parse_fractions(f.fractions);
    if (given("--seed")) c.seed = f.seed;
    if (given("--ref-split")) c.reference = parse_reference_split(f.ref_split);
    if (given("--out")) c.out = f.out;
    if (given("--override-friendly-resizer"))
        c.friendly_resizer_override = parse_filter_flag(f.override_filter, "--override-friendly-resizer");
    if (given("--model-name")) c.model_name = f.model_name;
    if (given("--input")) c.input_dir = f.input;
    if (given("--allow-count-mismatch")) c.allow_count_mismatch = f.allow_count_mismatch;
    if (given("--with-replacement")) c.with_replacement = f.with_replacement;
    if (given("--backbone-pixels")) c.backbone_pixels = f.backbone_pixels;
    return c;
}

nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaViolation, path.string() + " is not valid JSON: " + e.what());
    }
}

int cmd_report(const RunConfig& config, const std::string& input, const std::string& format, bool export_registry,
               bool validate_only, std::ostream& out, std::ostream& err) {
    if (export_registry) {
        const std::string text = config.registry().to_json().dump(2) + "\n";
        if (config.out.empty()) {
            out << text;
        } else {
            std::ofstream f(config.out, std::ios::binary | std::ios::trunc);
            if (!f) throw Error(ErrorCode::IoFailure, "cannot create " + config.out.string());
            f << text;
        }
        return kSuccess;
    }
    if (input.empty()) throw UsageError("report needs --in FILE or --export-registry");
    const nlohmann::json doc = read_json_file(input);
    const std::string kind = doc.is_object() ? doc.value("format", "") : "";

    if (validate_only) {
        const auto errors = validate_report_json(doc);
        for (const auto& e : errors) err << "schema: " << e << "\n";
        if (errors.empty()) out << input << ": valid " << kReportFormat << "\n";
        return errors.empty() ? kSuccess : kDataError;
    }

    std::string rendered;
    if (kind == kReportFormat) {
        const MetricReport report = report_from_json(doc);
        if (format == "csv") rendered = report_to_csv(report);
        else if (format == "json") rendered = report_to_json(report).dump(2) + "\n";
        else rendered = report_to_text(report);
    } else if (kind == "genmetrics.ranking/1") {
        const RankingTable table = ranking_from_json(doc);
        if (format == "csv") rendered = ranking_to_csv(table);
        else if (format == "json") rendered = ranking_to_json(table).dump(2) + "\n";
        else rendered = ranking_to_text(table);
    } else if (kind == "genmetrics.curve/1") {
        rendered = "fraction,value\n";
        for (const auto& pt : doc.at("points")) {
            char buf[80];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", pt.at("fraction").get<double>(),
                          pt.at("value").get<double>());
            rendered += buf;
        }
    } else {
        throw Error(ErrorCode::SchemaViolation, input + " is not a genmetrics report, ranking or curve document");
    }
    if (config.out.empty()) {
        out << rendered;
    } else {
        std::ofstream f(config.out, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::IoFailure, "cannot create " + config.out.string());
        f << rendered;
    }
    return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"genmetrics: generative-model evaluation toolkit"};
    app.require_subcommand(1);
    Flags f;

    auto* prep = app.add_subcommand("prep", "Resize, normalize and quantize images to 8-bit PNG");
    add_common(prep, f);
    prep->add_option("--input", f.input, "Directory of PNG/JPEG images");
    prep->add_option("--out", f.out, "Output directory");
    prep->add_option("--resolution", f.resolution, "Target square resolution");
    prep->add_option("--filter", f.filter, "Anti-aliasing filter: Lanczos (default) or Bicubic");
    prep->add_flag("--backbone-pixels", f.backbone_pixels,
                   "Emit the backbone's input pixels (friendly resize of already quantized images)");

    std::string real, fake;
    auto* metrics = app.add_subcommand("metrics", "Evaluate generated features against reference features");
    add_common(metrics, f);
    metrics->add_option("--real", real, "Reference GMF1 file")->required();
    metrics->add_option("--fake", fake, "Generated GMF1 file")->required();
    metrics->add_option("--k-pr", f.k_pr, "Neighbors for Precision/Recall (default 3)");
    metrics->add_option("--k-dc", f.k_dc, "Neighbors for Density/Coverage (default 5)");
    metrics->add_option("--splits", f.splits, "Chunks for the classifier score (default 1)");
    metrics->add_option("--ref-split", f.ref_split, "Reference data declaration NAME:COUNT (required)");
    metrics->add_option("--out", f.out, "Write the JSON report here");
    metrics->add_option("--filter", f.filter, "Preprocessing filter used on the images (for the report)");
    metrics->add_option("--model-name", f.model_name, "Model name in the report (default: fake file stem)");
    metrics->add_flag("--allow-count-mismatch", f.allow_count_mismatch,
                      "Acknowledge different reference/generated sample counts");

    std::string source;
    std::vector<std::string> targets;
    auto* compare = app.add_subcommand("compare", "Efficiency curves and ranking across several targets");
    add_common(compare, f);
    compare->add_option("--source", source, "Reference GMF1 file")->required();
    compare->add_option("--target", targets, "Generated GMF1 file (repeatable)");
    compare->add_option("--k-pr", f.k_pr, "Neighbors for Precision/Recall (default 3)");
    compare->add_option("--k-dc", f.k_dc, "Neighbors for Density/Coverage (default 5)");
    compare->add_option("--splits", f.splits, "Chunks for the classifier score (default 1)");
    compare->add_option("--fractions", f.fractions, "Comma-separated sampling fractions ending at 1.0");
    compare->add_option("--seed", f.seed, "Subsampling seed");
    compare->add_option("--ref-split", f.ref_split, "Reference data declaration NAME:COUNT");
    compare->add_option("--out", f.out, "Output directory");
    compare->add_option("--filter", f.filter, "Preprocessing filter used on the images (for the reports)");
    compare->add_flag("--with-replacement", f.with_replacement, "Subsample with replacement");
    compare->add_flag("--allow-count-mismatch", f.allow_count_mismatch,
                      "Acknowledge different reference/generated sample counts");

    std::string report_in, report_format = "text";
    bool export_registry = false, validate_only = false;
    auto* report = app.add_subcommand("report", "Re-render stored JSON as text/CSV, or export the registry");
    add_common(report, f);
    report->add_option("--in", report_in, "Report, ranking or curve JSON");
    report->add_option("--format", report_format, "text (default), csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    report->add_option("--out", f.out, "Write output here instead of stdout");
    report->add_flag("--export-registry", export_registry, "Print the backbone registry manifest");
    report->add_flag("--validate", validate_only, "Check a report against the report schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    }

    try {
        if (prep->parsed()) return cmd_prep(build_config(*prep, f), out, err);
        if (metrics->parsed()) return cmd_metrics(build_config(*metrics, f), real, fake, out, err);
        if (compare->parsed()) {
            std::vector<fs::path> paths(targets.begin(), targets.end());
            return cmd_compare(build_config(*compare, f), source, paths, out, err);
        }
        if (report->parsed())
            return cmd_report(build_config(*report, f), report_in, report_format, export_registry, validate_only, out,
                              err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.code() == ErrorCode::MissingReferenceDeclaration || e.code() == ErrorCode::UnknownBackbone)
            return kUsageError;
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}

}  // namespace genmetrics::cli
