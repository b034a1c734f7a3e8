#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>

#include "genmetrics/cli.hpp"
#include "genmetrics/error.hpp"
#include "genmetrics/image_codec.hpp"
#include "genmetrics/parallel.hpp"
#include "genmetrics/pixelpipe.hpp"

namespace fs = std::filesystem;

namespace genmetrics::cli {

namespace {

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::IoFailure, "SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

struct PrepResult {
    std::string output;
    int width = 0;
    int height = 0;
    int channels = 0;
    std::string sha256;
    std::string error;
};

}  // namespace

int cmd_prep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    config.validate();
    if (config.input_dir.empty()) throw UsageError("prep needs --input DIR");
    if (config.out.empty()) throw UsageError("prep needs --out DIR");
    if (!fs::is_directory(config.input_dir)) throw UsageError("input is not a directory: " + config.input_dir.string());

    const BackboneRegistry registry = config.registry();
    std::optional<BackboneSpec> backbone;
    if (config.backbone_pixels) {
        backbone = registry.find(config.backbone);
    } else if (config.resolution < 1) {
        throw UsageError("prep needs --resolution >= 1");
    }

    std::vector<fs::path> inputs;
    std::vector<std::string> skipped;
    for (const auto& entry : fs::directory_iterator(config.input_dir)) {
        if (!entry.is_regular_file()) continue;
        if (has_image_extension(entry.path()))
            inputs.push_back(entry.path());
        else
            skipped.push_back(entry.path().filename().string());
    }
    std::sort(inputs.begin(), inputs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    std::sort(skipped.begin(), skipped.end());

    fs::create_directories(config.out);

    // Output names are <stem>.png; a later file with a duplicate stem is an error.
    std::vector<std::string> out_names(inputs.size());
    std::map<std::string, std::size_t> first_owner;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        out_names[i] = inputs[i].stem().string() + ".png";
        first_owner.try_emplace(out_names[i], i);
    }

    std::vector<PrepResult> results(inputs.size());
    parallel_for(inputs.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            PrepResult& r = results[i];
            try {
                if (first_owner.at(out_names[i]) != i)
                    throw Error(ErrorCode::PreconditionViolation, "output name " + out_names[i] + " already used by " +
                                                                      inputs[first_owner.at(out_names[i])].filename().string());
                const PixelBuffer decoded = load_image(inputs[i]);
                PixelBuffer prepared = [&] {
                    if (backbone) return backbone_resize(decoded, *backbone, config.friendly_resizer_override);
                    const PixelBuffer resized =
                        resize(decoded, config.resolution, config.resolution, config.preprocess_filter, true);
                    return quantize(normalize(resized));
                }();
                const auto bytes = encode_png(prepared);
                write_file(config.out / out_names[i], bytes);
                r.output = out_names[i];
                r.width = prepared.width();
                r.height = prepared.height();
                r.channels = prepared.channels();
                r.sha256 = sha256_hex(bytes);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }
    });

    nlohmann::json manifest;
    manifest["format"] = "genmetrics.prep-manifest/1";
    manifest["toolkit_version"] = std::string(kToolkitVersion);
    if (backbone) {
        manifest["route"] = "backbone";
        manifest["backbone"] = backbone->name;
        manifest["resolution"] = backbone->input_resolution;
        manifest["filter"] = std::string(to_string(config.friendly_resizer_override.value_or(backbone->friendly_filter)));
        manifest["friendly_resizer_override"] = config.friendly_resizer_override.has_value();
    } else {
        manifest["route"] = "preprocess";
        manifest["resolution"] = config.resolution;
        manifest["filter"] = std::string(to_string(config.preprocess_filter));
        manifest["quantization"] = "floor(clip(127.5 * x + 128, 0, 255))";
    }
    manifest["antialias"] = true;
    manifest["files"] = nlohmann::json::array();
    manifest["errors"] = nlohmann::json::array();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& r = results[i];
        const std::string input = inputs[i].filename().string();
        if (!r.error.empty()) {
            ++failures;
            manifest["errors"].push_back({{"input", input}, {"error", r.error}});
            err << "error: " << input << ": " << r.error << "\n";
            continue;
        }
        manifest["files"].push_back({{"input", input},
                                     {"output", r.output},
                                     {"width", r.width},
                                     {"height", r.height},
                                     {"channels", r.channels},
                                     {"sha256", r.sha256}});
    }
    manifest["skipped"] = skipped;

    const std::string text = manifest.dump(2) + "\n";
    write_file(config.out / "manifest.json",
               std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));

    out << "prepared " << (inputs.size() - failures) << " of " << inputs.size() << " images into "
        << config.out.string() << "\n";
    if (failures > 0) {
        err << failures << " file(s) failed; see errors in manifest.json\n";
        return kDataError;
    }
    return kSuccess;
}

}  // namespace genmetrics::cli
