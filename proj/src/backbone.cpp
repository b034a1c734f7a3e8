#include "genmetrics/backbone.hpp"

#include <algorithm>

#include "genmetrics/error.hpp"

namespace genmetrics {

namespace {

constexpr std::array<double, 3> kImageNetMean{0.485, 0.456, 0.406};
constexpr std::array<double, 3> kImageNetStd{0.229, 0.224, 0.225};

void set_imagenet_normalization(BackboneSpec& spec) {
    for (int c = 0; c < 3; ++c) {
        spec.channel_scale[c] = 1.0 / (255.0 * kImageNetStd[c]);
        spec.channel_offset[c] = -kImageNetMean[c] / kImageNetStd[c];
    }
}

}  // namespace

std::vector<BackboneSpec> builtin_registry() {
    BackboneSpec inception;
    inception.name = "InceptionV3";
    inception.input_resolution = 299;
    inception.friendly_filter = FilterKind::Bilinear;
    inception.feature_dim = 2048;
    inception.class_count = 1000;
    inception.channel_scale = {1.0 / 127.5, 1.0 / 127.5, 1.0 / 127.5};
    inception.channel_offset = {-1.0, -1.0, -1.0};
    inception.score_name = "IS";
    inception.fd_name = "FID";
    inception.prdc_prefix = "";

    BackboneSpec swav;
    swav.name = "SwAV";
    swav.input_resolution = 224;
    swav.friendly_filter = FilterKind::Bilinear;
    swav.feature_dim = 2048;
    swav.class_count = std::nullopt;
    set_imagenet_normalization(swav);
    swav.score_name = "SS";
    swav.fd_name = "FSD";
    swav.prdc_prefix = "S-";

    BackboneSpec swin;
    swin.name = "Swin-T";
    swin.input_resolution = 224;
    swin.friendly_filter = FilterKind::Bicubic;
    swin.feature_dim = 768;
    swin.class_count = 1000;
    set_imagenet_normalization(swin);
    swin.score_name = "TS";
    swin.fd_name = "FTD";
    swin.prdc_prefix = "T-";

    return {inception, swav, swin};
}

BackboneRegistry BackboneRegistry::builtin() {
    BackboneRegistry reg;
    for (auto& spec : builtin_registry()) reg.add(std::move(spec));
    return reg;
}

void BackboneRegistry::add(BackboneSpec spec) {
    if (contains(spec.name)) throw Error(ErrorCode::DuplicateBackbone, "backbone already registered: " + spec.name);
    specs_.push_back(std::move(spec));
}

void BackboneRegistry::upsert(BackboneSpec spec) {
    auto it = std::find_if(specs_.begin(), specs_.end(), [&](const auto& s) { return s.name == spec.name; });
    if (it != specs_.end())
        *it = std::move(spec);
    else
        specs_.push_back(std::move(spec));
}

const BackboneSpec& BackboneRegistry::find(std::string_view name) const {
    auto it = std::find_if(specs_.begin(), specs_.end(), [&](const auto& s) { return s.name == name; });
    if (it == specs_.end()) throw Error(ErrorCode::UnknownBackbone, "unknown backbone: " + std::string(name));
    return *it;
}

bool BackboneRegistry::contains(std::string_view name) const noexcept {
    return std::any_of(specs_.begin(), specs_.end(), [&](const auto& s) { return s.name == name; });
}

nlohmann::json backbone_to_json(const BackboneSpec& spec) {
    nlohmann::json j;
    j["name"] = spec.name;
    j["input_resolution"] = spec.input_resolution;
    j["friendly_filter"] = std::string(to_string(spec.friendly_filter));
    j["feature_dim"] = spec.feature_dim;
    j["class_count"] = spec.class_count ? nlohmann::json(*spec.class_count) : nlohmann::json(nullptr);
    j["channel_scale"] = spec.channel_scale;
    j["channel_offset"] = spec.channel_offset;
    j["metric_names"] = {
        {"score", spec.score_name},
        {"fd", spec.fd_name},
        {"precision", spec.precision_name()},
        {"recall", spec.recall_name()},
        {"density", spec.density_name()},
        {"coverage", spec.coverage_name()},
        {"intra_class_fd", spec.intra_class_fd_name()},
    };
    j["prdc_prefix"] = spec.prdc_prefix;
    return j;
}

BackboneSpec backbone_from_json(const nlohmann::json& j) {
    try {
        BackboneSpec spec;
        spec.name = j.at("name").get<std::string>();
        spec.input_resolution = j.at("input_resolution").get<int>();
        const auto filter = parse_filter(j.at("friendly_filter").get<std::string>());
        if (!filter) throw Error(ErrorCode::SchemaViolation, "unknown friendly_filter for " + spec.name);
        spec.friendly_filter = *filter;
        spec.feature_dim = j.at("feature_dim").get<int>();
        if (j.contains("class_count") && !j["class_count"].is_null()) spec.class_count = j["class_count"].get<int>();
        if (j.contains("channel_scale")) spec.channel_scale = j["channel_scale"].get<std::array<double, 3>>();
        if (j.contains("channel_offset")) spec.channel_offset = j["channel_offset"].get<std::array<double, 3>>();
        if (j.contains("metric_names")) {
            const auto& names = j["metric_names"];
            spec.score_name = names.at("score").get<std::string>();
            spec.fd_name = names.at("fd").get<std::string>();
        } else {
            spec.score_name = j.value("score_name", spec.name + "-Score");
            spec.fd_name = j.value("fd_name", "FD-" + spec.name);
        }
        spec.prdc_prefix = j.value("prdc_prefix", std::string());
        if (spec.input_resolution < 1 || spec.feature_dim < 1)
            throw Error(ErrorCode::SchemaViolation, "backbone " + spec.name + " needs positive resolution and dim");
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaViolation, std::string("bad backbone entry: ") + e.what());
    }
}

nlohmann::json BackboneRegistry::to_json() const {
    nlohmann::json j;
    j["format"] = "genmetrics.registry/1";
    j["backbones"] = nlohmann::json::array();
    for (const auto& spec : specs_) j["backbones"].push_back(backbone_to_json(spec));
    return j;
}

BackboneRegistry BackboneRegistry::from_json(const nlohmann::json& manifest) {
    if (!manifest.is_object() || manifest.value("format", "") != "genmetrics.registry/1" ||
        !manifest.contains("backbones") || !manifest["backbones"].is_array())
        throw Error(ErrorCode::SchemaViolation, "not a genmetrics registry manifest");
    BackboneRegistry reg;
    for (const auto& entry : manifest["backbones"]) reg.add(backbone_from_json(entry));
    return reg;
}

}  // namespace genmetrics
