#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genmetrics/backbone.hpp"

namespace genmetrics {

inline constexpr std::string_view kToolkitVersion = "1.0.0";
inline constexpr std::string_view kReportFormat = "genmetrics.report/1";

enum class Direction { HigherBetter, LowerBetter };

enum class MetricKind { Score, FrechetDistance, Precision, Recall, Density, Coverage, IntraClassFD, Top1, Top5 };

std::string_view to_string(Direction d) noexcept;
std::string_view to_string(MetricKind k) noexcept;
// LowerBetter exactly for the Frechet family (FD and intra-class FD).
Direction direction_of(MetricKind kind) noexcept;
// Display name of `kind` under `backbone`.
std::string metric_name(const BackboneSpec& backbone, MetricKind kind);

struct MetricEntry {
    MetricKind kind = MetricKind::FrechetDistance;
    double value = 0.0;
    Direction direction = Direction::LowerBetter;

    friend bool operator==(const MetricEntry&, const MetricEntry&) = default;
};

// Evaluation protocol echoed into every report so results can be audited and
// compared: which reference data was used, how many samples, which resizers.
struct ProtocolInfo {
    std::string reference_split;  // e.g. "train", "validation", "test"
    std::size_t reference_count = 0;
    std::size_t generated_count = 0;
    std::map<std::string, std::string> resizers_used;  // route -> filter
    bool friendly_resizer_override = false;
    std::string toolkit_version = std::string(kToolkitVersion);
    std::map<std::string, nlohmann::json> settings;  // k_pr, k_dc, splits, ...

    friend bool operator==(const ProtocolInfo&, const ProtocolInfo&) = default;
};

struct MetricReport {
    std::string model_name;
    std::string backbone;
    std::map<std::string, MetricEntry> entries;
    ProtocolInfo protocol;
    std::vector<std::string> notes;  // omitted metrics and warnings

    // Inserts with the direction implied by `kind`.
    void set(const BackboneSpec& spec, MetricKind kind, double value);

    friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

nlohmann::json report_to_json(const MetricReport& report);
// Validates first; throws SchemaViolation.
MetricReport report_from_json(const nlohmann::json& j);
// Structural check mirroring docs/report.schema.json; returns the list of
// violations (empty when valid).
std::vector<std::string> validate_report_json(const nlohmann::json& j);

std::string report_to_text(const MetricReport& report);
// RFC 4180 quoting when the field holds a comma, quote or newline.
std::string csv_field(std::string_view field);
std::string report_to_csv(const MetricReport& report);

}  // namespace genmetrics
