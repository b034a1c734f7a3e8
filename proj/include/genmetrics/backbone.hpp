#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genmetrics/pixel_buffer.hpp"

namespace genmetrics {

// An evaluation backbone as seen by the pipeline: its input geometry, the
// resize filter it was trained with, feature/head sizes, the per-channel
// affine normalization (out = v * scale + offset on 0..255 samples) and the
// display names of the metrics computed on its features.
struct BackboneSpec {
    std::string name;
    int input_resolution = 0;
    FilterKind friendly_filter = FilterKind::Bilinear;
    int feature_dim = 0;
    std::optional<int> class_count;
    std::array<double, 3> channel_scale{1.0, 1.0, 1.0};
    std::array<double, 3> channel_offset{0.0, 0.0, 0.0};
    std::string score_name;
    std::string fd_name;
    std::string prdc_prefix;

    std::string precision_name() const { return prdc_prefix + "Precision"; }
    std::string recall_name() const { return prdc_prefix + "Recall"; }
    std::string density_name() const { return prdc_prefix + "Density"; }
    std::string coverage_name() const { return prdc_prefix + "Coverage"; }
    std::string intra_class_fd_name() const { return "I" + fd_name; }

    friend bool operator==(const BackboneSpec&, const BackboneSpec&) = default;
};

inline constexpr std::string_view kTop1Name = "Top-1 acc.";
inline constexpr std::string_view kTop5Name = "Top-5 acc.";

// InceptionV3, SwAV, Swin-T.
std::vector<BackboneSpec> builtin_registry();

class BackboneRegistry {
public:
    BackboneRegistry() = default;
    static BackboneRegistry builtin();

    // Throws DuplicateBackbone when the name is taken.
    void add(BackboneSpec spec);
    // Replaces an existing entry or adds a new one.
    void upsert(BackboneSpec spec);
    // Throws UnknownBackbone.
    const BackboneSpec& find(std::string_view name) const;
    bool contains(std::string_view name) const noexcept;
    const std::vector<BackboneSpec>& specs() const noexcept { return specs_; }

    // Registry manifest shared with out-of-process extractors.
    nlohmann::json to_json() const;
    static BackboneRegistry from_json(const nlohmann::json& manifest);

private:
    std::vector<BackboneSpec> specs_;
};

nlohmann::json backbone_to_json(const BackboneSpec& spec);
BackboneSpec backbone_from_json(const nlohmann::json& j);

}  // namespace genmetrics
