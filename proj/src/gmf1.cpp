#include "genmetrics/gmf1.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "genmetrics/error.hpp"
#include "genmetrics/image_codec.hpp"

namespace genmetrics {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::size_t at, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void put_u64(std::vector<std::uint8_t>& out, std::size_t at, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::span<const std::uint8_t> in, std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
    return v;
}

void put_f32_array(std::vector<std::uint8_t>& out, std::size_t at, std::span<const float> values) {
    for (std::size_t i = 0; i < values.size(); ++i) put_u32(out, at + 4 * i, std::bit_cast<std::uint32_t>(values[i]));
}

std::vector<float> get_f32_array(std::span<const std::uint8_t> in, std::size_t at, std::size_t n, const char* what) {
    std::vector<float> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = std::bit_cast<float>(get_u32(in, at + 4 * i));
        if (!std::isfinite(values[i]))
            throw Error(ErrorCode::NonFiniteValue, std::string("non-finite ") + what + " value at index " + std::to_string(i));
    }
    return values;
}

}  // namespace

std::vector<std::uint8_t> encode_gmf1(const FeatureSet& features, const std::optional<PosteriorSet>& posteriors) {
    const std::uint64_t n = features.count();
    const std::uint32_t d = static_cast<std::uint32_t>(features.dim());
    const std::uint32_t k = posteriors ? static_cast<std::uint32_t>(posteriors->classes()) : 0;
    if (posteriors && posteriors->count() != n)
        throw Error(ErrorCode::PreconditionViolation, "posterior count " + std::to_string(posteriors->count()) +
                                                          " differs from feature count " + std::to_string(n));
    std::uint32_t flags = 0;
    std::uint32_t stored_classes = 0;
    if (features.has_labels()) {
        flags |= gmf1::kFlagLabels;
        const auto labels = features.labels();
        const std::uint32_t inferred = *std::max_element(labels.begin(), labels.end()) + 1;
        if (features.class_count() != inferred) {
            flags |= gmf1::kFlagClassCount;
            stored_classes = features.class_count();
        }
    }

    std::size_t size = gmf1::kHeaderSize + n * d * 4;
    if (features.has_labels()) size += n * 4;
    size += n * k * 4;
    std::vector<std::uint8_t> out(size, 0);

    std::memcpy(out.data(), "GMF1", 4);
    put_u32(out, 4, gmf1::kVersion);
    put_u64(out, 8, n);
    put_u32(out, 16, d);
    put_u32(out, 20, k);
    put_u32(out, 24, flags);
    put_u32(out, 28, stored_classes);

    std::size_t at = gmf1::kHeaderSize;
    put_f32_array(out, at, features.values());
    at += n * d * 4;
    if (features.has_labels()) {
        const auto labels = features.labels();
        for (std::size_t i = 0; i < n; ++i) put_u32(out, at + 4 * i, labels[i]);
        at += n * 4;
    }
    if (posteriors) put_f32_array(out, at, posteriors->values());
    return out;
}

FeatureFile decode_gmf1(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), "GMF1", 4) != 0)
        throw Error(ErrorCode::BadMagic, "missing GMF1 magic");
    if (bytes.size() < gmf1::kHeaderSize) throw Error(ErrorCode::TruncatedPayload, "header shorter than 64 bytes");
    const std::uint32_t version = get_u32(bytes, 4);
    if (version != gmf1::kVersion)
        throw Error(ErrorCode::VersionMismatch, "unsupported GMF1 version " + std::to_string(version));
    const std::uint64_t n = get_u64(bytes, 8);
    const std::uint32_t d = get_u32(bytes, 16);
    const std::uint32_t k = get_u32(bytes, 20);
    const std::uint32_t flags = get_u32(bytes, 24);
    const bool has_labels = flags & gmf1::kFlagLabels;
    if (n == 0 || d == 0) throw Error(ErrorCode::PreconditionViolation, "GMF1 file declares N = 0 or D = 0");

    // Guard the size arithmetic against absurd headers before multiplying.
    const std::uint64_t payload = bytes.size() - gmf1::kHeaderSize;
    const std::uint64_t per_row = 4ull * d + (has_labels ? 4ull : 0ull) + 4ull * k;
    if (n > payload / per_row || n * per_row != payload)
        throw Error(ErrorCode::TruncatedPayload, "payload size " + std::to_string(payload) + " does not match header (N=" +
                                                     std::to_string(n) + ", D=" + std::to_string(d) +
                                                     ", K=" + std::to_string(k) + ")");

    std::size_t at = gmf1::kHeaderSize;
    auto values = get_f32_array(bytes, at, n * d, "feature");
    at += n * d * 4;
    std::optional<std::vector<ClassId>> labels;
    std::optional<std::uint32_t> class_count;
    if (has_labels) {
        labels.emplace(n);
        for (std::size_t i = 0; i < n; ++i) (*labels)[i] = get_u32(bytes, at + 4 * i);
        at += n * 4;
        if (flags & gmf1::kFlagClassCount) class_count = get_u32(bytes, 28);
    }
    FeatureFile file{FeatureSet(n, d, std::move(values), std::move(labels), class_count), std::nullopt};
    if (k > 0) file.posteriors.emplace(n, k, get_f32_array(bytes, at, n * k, "posterior"));
    return file;
}

void write_features(const std::filesystem::path& path, const FeatureSet& features,
                    const std::optional<PosteriorSet>& posteriors) {
    write_file(path, encode_gmf1(features, posteriors));
}

FeatureFile read_features(const std::filesystem::path& path) {
    FeatureFile file = decode_gmf1(read_file(path));
    file.features = file.features.with_source_tag(path.string());
    return file;
}

}  // namespace genmetrics
