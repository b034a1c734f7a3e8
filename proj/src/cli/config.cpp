#include <fstream>
#include <string>

#include "genmetrics/cli.hpp"
#include "genmetrics/error.hpp"

namespace genmetrics::cli {

ReferenceSplit parse_reference_split(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw UsageError("reference split must be NAME:COUNT, got '" + text + "'");
    ReferenceSplit ref;
    ref.name = text.substr(0, colon);
    const std::string count = text.substr(colon + 1);
    if (count.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("reference count must be a non-negative integer, got '" + count + "'");
    try {
        ref.count = std::stoull(count);
    } catch (const std::exception&) {
        throw UsageError("reference count out of range: '" + count + "'");
    }
    return ref;
}

BackboneRegistry RunConfig::registry() const {
    BackboneRegistry reg = BackboneRegistry::builtin();
    for (const auto& spec : custom_backbones) reg.upsert(spec);
    return reg;
}

void RunConfig::validate() const {
    if (preprocess_filter != FilterKind::Bicubic && preprocess_filter != FilterKind::Lanczos)
        throw UsageError("preprocessing filter must be Bicubic or Lanczos (anti-aliasing), got " +
                         std::string(to_string(preprocess_filter)));
    if (manifold.k_pr < 1 || manifold.k_dc < 1) throw UsageError("k values must be >= 1");
    if (splits < 1) throw UsageError("splits must be >= 1");
}

namespace {

FilterKind filter_from(const nlohmann::json& v, const char* key) {
    const auto f = parse_filter(v.get<std::string>());
    if (!f) throw UsageError(std::string("config: unknown filter for ") + key + ": " + v.get<std::string>());
    return *f;
}

}  // namespace

void apply_config_json(RunConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "backbone") c.backbone = v.get<std::string>();
            else if (key == "backbones") {
                for (const auto& entry : v) c.custom_backbones.push_back(backbone_from_json(entry));
            } else if (key == "input") c.input_dir = v.get<std::string>();
            else if (key == "resolution") c.resolution = v.get<int>();
            else if (key == "filter") c.preprocess_filter = filter_from(v, "filter");
            else if (key == "backbone_pixels") c.backbone_pixels = v.get<bool>();
            else if (key == "override_friendly_resizer") {
                if (!v.is_null()) c.friendly_resizer_override = filter_from(v, "override_friendly_resizer");
            } else if (key == "k_pr") c.manifold.k_pr = v.get<std::size_t>();
            else if (key == "k_dc") c.manifold.k_dc = v.get<std::size_t>();
            else if (key == "splits") c.splits = v.get<std::size_t>();
            else if (key == "ref_split") {
                if (v.is_string()) c.reference = parse_reference_split(v.get<std::string>());
                else c.reference = ReferenceSplit{v.at("name").get<std::string>(), v.at("count").get<std::size_t>()};
            } else if (key == "model_name") c.model_name = v.get<std::string>();
            else if (key == "allow_count_mismatch") c.allow_count_mismatch = v.get<bool>();
            else if (key == "fractions") c.fractions = v.get<std::vector<double>>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "with_replacement") c.with_replacement = v.get<bool>();
            else if (key == "out") c.out = v.get<std::string>();
            else throw UsageError("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    } catch (const Error& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    RunConfig config;
    apply_config_json(config, j);
    return config;
}

}  // namespace genmetrics::cli
