#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "genmetrics/backbone.hpp"
#include "genmetrics/gmf1.hpp"
#include "genmetrics/manifold.hpp"
#include "genmetrics/pixel_buffer.hpp"
#include "genmetrics/report.hpp"

namespace genmetrics::cli {

enum ExitCode : int { kSuccess = 0, kDataError = 1, kUsageError = 2 };

// Bad invocation (missing declaration, invalid flag combination); exit 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReferenceSplit {
    std::string name;
    std::size_t count = 0;
};

// Parses "NAME:COUNT". Throws UsageError.
ReferenceSplit parse_reference_split(const std::string& text);

// Settings shared by all commands. Loaded from a JSON config file whose keys
// mirror the field names, then overridden by command-line flags.
struct RunConfig {
    std::string backbone = "InceptionV3";
    std::vector<BackboneSpec> custom_backbones;

    // prep
    std::filesystem::path input_dir;
    int resolution = 0;
    FilterKind preprocess_filter = FilterKind::Lanczos;  // route 1: Bicubic or Lanczos
    bool backbone_pixels = false;                       // emit route-4 pixels instead

    // route-4 lock; set only by an explicit override
    std::optional<FilterKind> friendly_resizer_override;

    // metrics
    ManifoldParams manifold;
    std::size_t splits = 1;
    std::optional<ReferenceSplit> reference;
    std::string model_name;
    bool allow_count_mismatch = false;

    // compare
    std::vector<double> fractions;
    std::uint64_t seed = 0;
    bool with_replacement = false;

    std::filesystem::path out;

    BackboneRegistry registry() const;
    // Throws UsageError for invariant violations (route-1 filter, k values).
    void validate() const;
};

// Applies the keys present in `j` onto `config`. Throws UsageError.
void apply_config_json(RunConfig& config, const nlohmann::json& j);
RunConfig load_config_file(const std::filesystem::path& path);

// Builds the report for one real/fake feature pair. `warnings` receives
// human-readable warnings also recorded in the report notes.
MetricReport compute_report(const RunConfig& config, const FeatureFile& real, const FeatureFile& fake,
                            std::vector<std::string>* warnings = nullptr);

int cmd_prep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_metrics(const RunConfig& config, const std::filesystem::path& real, const std::filesystem::path& fake,
                std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, const std::filesystem::path& source,
                const std::vector<std::filesystem::path>& targets, std::ostream& out, std::ostream& err);

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace genmetrics::cli
